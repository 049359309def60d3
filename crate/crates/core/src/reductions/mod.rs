//! Hardness gadgets as instance builders with checkable certificates.

mod certificate;
mod cover;
mod interdiction;
mod setcover;
mod tmec;

pub use certificate::{verify_certificate, ReductionCertificate, Solution, Verdict, Violation};
pub use cover::{
    max_cover, min_cover, min_set_cover, square_collection, CoverInstance, CoverObjective,
    SetCoverInstance, ENUMERATION_LIMIT, SQUARE_LIMIT,
};
pub use interdiction::{reduce_maxcover_to_interdiction, InterdictionGadget, InterdictionInstance};
pub use setcover::{
    reduce_setcover_to_directed_cpmec, reduce_setcover_to_multipartner_cpmec, Incidence,
    SetCoverGadget,
};
pub use tmec::{cut_from_partition, partition_from_cut, reduce_bisection_to_tmec, tmec_offset};

/// Builds a reduction and wraps it in its certificate.
pub fn certify_setcover_directed(sc: &SetCoverInstance) -> crate::Result<ReductionCertificate> {
    let (target, gadget) = reduce_setcover_to_directed_cpmec(sc)?;
    Ok(ReductionCertificate::SetcoverDirectedCpmec {
        source: sc.clone(),
        target,
        gadget,
    })
}

pub fn certify_setcover_multipartner(sc: &SetCoverInstance) -> crate::Result<ReductionCertificate> {
    let (target, gadget) = reduce_setcover_to_multipartner_cpmec(sc)?;
    Ok(ReductionCertificate::SetcoverMultipartnerCpmec {
        source: sc.clone(),
        target,
        gadget,
    })
}

pub fn certify_bisection_tmec(g: &crate::WeightedGraph) -> crate::Result<ReductionCertificate> {
    let target = reduce_bisection_to_tmec(g)?;
    Ok(ReductionCertificate::BisectionTmec {
        source: g.clone(),
        target,
    })
}

pub fn certify_maxcover_interdiction(c: &CoverInstance) -> crate::Result<ReductionCertificate> {
    let (target, gadget) = reduce_maxcover_to_interdiction(c)?;
    Ok(ReductionCertificate::MaxcoverInterdiction {
        source: c.clone(),
        target,
        gadget,
    })
}

pub fn certify_squaring(c: &CoverInstance, limit: usize) -> crate::Result<ReductionCertificate> {
    let target = square_collection(c, limit)?;
    Ok(ReductionCertificate::Squaring {
        source: c.clone(),
        target,
    })
}
