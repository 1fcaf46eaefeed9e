use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct OpEntry {
    pub verb: &'static str,
    pub function: &'static str,
    pub computes: &'static str,
}

const fn op(verb: &'static str, function: &'static str, computes: &'static str) -> OpEntry {
    OpEntry { verb, function, computes }
}

pub const OPS: &[OpEntry] = &[
    op("mat kron", "linalg::kron", "Kronecker product, first factor major"),
    op("mat hs", "linalg::hs_inner", "tr(x y*)"),
    op("mat nullspace", "linalg::nullspace", "numerical kernel basis"),
    op("mat rank", "linalg::rank", "numerical rank"),
    op("mat random-unitary", "linalg::random_unitary", "Haar unitary from a seed"),
    op("mat commutation", "linalg::commutation_matrix", "perfect-shuffle permutation"),
    op("frame make-units", "frames::matrix_unit_frame", "standard matrix units"),
    op("frame verify", "frames::verify_frame", "the three frame axioms"),
    op("frame pi1", "frames::pi1", "first factor of a split frame"),
    op("frame pi2", "frames::pi2", "complementary factor of a split frame"),
    op("frame dot", "frames::dot", "product of commuting frames"),
    op("frame tensor", "frames::tensor_frame", "Kronecker product of frames"),
    op("frame conj", "frames::conjugate_frame", "unitary conjugate of a frame"),
    op("frame random", "frames::random_frame", "seeded random frame"),
    op("hom from-frame", "homspace::hom_from_frame", "hom determined by a frame"),
    op("hom frame-of", "homspace::frame_of_hom", "image of the matrix units"),
    op("hom ev", "homspace::ev", "evaluation h(T)"),
    op("hom iota", "homspace::iota", "stabilization by E_l"),
    op("hom compose", "homspace::compose", "composition"),
    op("hom phi", "homspace::compose_phi", "stabilized composition of equal-ratio homs"),
    op("hom tensor", "homspace::tensor_hom", "tensor product of homs"),
    op("hom intertwiner", "homspace::intertwiner", "unitary implementing h"),
    op("hom pushforward", "homspace::pushforward", "image frame"),
    op("hom random", "homspace::random_hom", "seeded random hom"),
    op("hom basepoint", "homspace::basepoint_hom", "X -> X ⊗ E_l"),
    op("hom same-stab", "homspace::same_stabilization", "equality after stabilization"),
    op("alg span", "grassmannian::span_subalgebra", "generated *-subalgebra"),
    op("alg centralizer", "grassmannian::centralizer", "commutant"),
    op("alg relcent", "grassmannian::relative_centralizer", "commutant inside a subalgebra"),
    op("alg center", "grassmannian::center", "center"),
    op("alg isk", "grassmannian::is_k_subalgebra", "unital copy of M_d test"),
    op("alg extract", "grassmannian::extract_frame", "matrix units of a copy of M_d"),
    op("alg lambda", "grassmannian::lambda_map", "span of a frame"),
    op("alg image", "grassmannian::image", "image subalgebra"),
    op("alg grmap", "grassmannian::gr_map", "induced map of subalgebras"),
    op("alg ztensor", "grassmannian::centralizer_tensor_check", "centralizer of a tensor product"),
    op("cat check-morphism", "catverify::is_c_morphism", "morphism condition f_*(α) = π₁(β)"),
    op("cat random", "catverify::random_c_morphism", "seeded random morphism"),
    op("cat basepoint", "catverify::basepoint_c_morphism", "standard-unit morphism"),
    op("cat frmap", "catverify::fr_map", "frame functor on a morphism"),
    op("cat compose", "catverify::compose_c", "composition of morphisms"),
    op("cat tensor", "catverify::tensor_c", "tensor product of morphisms"),
    op("cat functor", "catverify::functoriality_residual", "functoriality and the subalgebra comparison"),
    op("cat naturality", "catverify::check_naturality", "naturality of the frame product"),
    op("cat assoc", "catverify::check_associativity_identity_tau", "associativity, unit and symmetry diagrams"),
    op("cat tau", "catverify::tau_residual", "symmetry diagram"),
    op("cat nerve-face", "catverify::nerve_face", "face of a nerve chain"),
    op("cat degeneracy", "catverify::degeneracy", "degeneracy of a nerve chain"),
    op("cat bundle-face", "catverify::bundle_face", "face on the bundle over the nerve"),
    op("cat simplicial", "catverify::simplicial_identity_residual", "simplicial identities"),
    op("fred index", "fredholm::index_report", "kernel, cokernel and index"),
    op("fred conj", "fredholm::conjugate", "unitary conjugate of an operator"),
    op("fred amplify", "fredholm::amplify", "operator pushed through a hom"),
    op("fred localize", "fredholm::localize_index", "index with l inverted"),
    op("fred random", "fredholm::random_fredholm", "seeded operator"),
    op("ab snf", "abgroup::smith_normal_form", "Smith normal form"),
    op("ab canon", "abgroup::AbGroupPresentation::canonical", "invariant factor decomposition"),
    op("ab coker", "abgroup::cokernel", "cokernel"),
    op("ab ker", "abgroup::kernel", "kernel"),
    op("ab localize", "abgroup::localize", "localization away from l"),
    op("ab colim", "abgroup::sequential_colimit", "sequential colimit after inverting l"),
    op("suite", "battery::run_all", "all property batteries"),
];
