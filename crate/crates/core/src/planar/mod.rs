//! Planar embeddings, weight perturbation, and the 2-vs-2 edge cut procedure
//! with its network diversion and constrained path transformers.

mod embedding;
mod perturb;
mod transform;
mod twovtwo;

pub use embedding::{build_embedding, PlanarEmbedding};
pub use perturb::{
    enclosed_faces, perturb, perturbed_min_cut, principal_cut_component, PerturbedCut,
    PerturbedWeights, PERTURB_BOUND,
};
pub use transform::{
    diversion_holds, reduce_network_diversion, reduce_two_node_lcsp, solve_network_diversion,
    solve_two_node_lcsp, DiversionCut, DiversionReduction, LcspPath, LcspReduction,
};
pub use twovtwo::{
    run_2v2, solve_2v2_planar_cpmec, Completion, ExactOracle, ThreeNodeSolver, TwoVsTwoRun,
};
