//! Gradings by coset partitions, normal-extension checks and the
//! subgroup ↔ intermediate-subring correspondence.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cosets::{left_cosets, right_cosets};
use crate::error::{Error, Result};
use crate::fp::FPData;
use crate::functor::{is_normal, kernel, RingFunctor};
use crate::group::FiniteGroup;
use crate::partition::Partition;
use crate::ring::{FusionRing, UNIT};
use crate::subring::{adjoint_subring, commutator, radical, subrings_containing, Subring};
use crate::tol;

/// A grading of a ring by the group of its components. Component `c` is
/// `components.blocks()[c]`; component `0` contains the unit.
#[derive(Debug, Clone)]
pub struct Grading<'r> {
    ring: &'r FusionRing,
    trivial_component: Subring<'r>,
    components: Partition,
    group: FiniteGroup,
}

impl<'r> Grading<'r> {
    /// Builds the grading with the given components, deriving the group law
    /// from product supports.
    pub fn from_partition(ring: &'r FusionRing, components: Partition) -> Result<Self> {
        if components.size() != ring.rank()
            || (0..ring.rank()).any(|x| components.block_of(x).is_none())
        {
            return Err(Error::Grading(
                "components do not partition the basis".into(),
            ));
        }
        let blocks = components.blocks();
        let trivial_component = Subring::new(ring, blocks[0].iter().copied())
            .map_err(|e| Error::Grading(format!("unit component: {e}")))?;
        let m = blocks.len();
        let mut table = Vec::with_capacity(m * m);
        for g in blocks {
            for h in blocks {
                let support = ring
                    .support_product(&g.iter().copied().collect(), &h.iter().copied().collect());
                let hit: BTreeSet<usize> = support
                    .iter()
                    .map(|&x| components.block_of(x).expect("covered"))
                    .collect();
                if hit.len() != 1 {
                    return Err(Error::Grading(format!(
                        "product of components {{{}}} and {{{}}} meets {} components",
                        ring.label(g[0]),
                        ring.label(h[0]),
                        hit.len()
                    )));
                }
                table.push(*hit.iter().next().expect("one component"));
            }
        }
        let labels = blocks
            .iter()
            .map(|b| ring.label(b[0]).to_string())
            .collect();
        let group = FiniteGroup::with_labels(format!("grading({})", ring.name()), table, labels)
            .map_err(|e| Error::Grading(e.to_string()))?;
        for (c, block) in blocks.iter().enumerate() {
            let dual_block = components.block_of(ring.dual(block[0])).expect("covered");
            if block
                .iter()
                .any(|&x| components.block_of(ring.dual(x)) != Some(dual_block))
                || dual_block != group.inverse(c)
            {
                return Err(Error::Grading(format!(
                    "duals of component {c} are not its inverse"
                )));
            }
        }
        Ok(Self {
            ring,
            trivial_component,
            components,
            group,
        })
    }

    /// The grading given by the `grade` lines of the ring file.
    pub fn from_labels(ring: &'r FusionRing) -> Result<Self> {
        let grades = ring
            .grades()
            .ok_or_else(|| Error::Grading(format!("{} carries no grades", ring.name())))?;
        let names: BTreeSet<&str> = grades.iter().map(String::as_str).collect();
        let blocks = names
            .iter()
            .map(|g| (0..ring.rank()).filter(|&i| grades[i] == *g).collect())
            .collect();
        Self::from_partition(ring, Partition::from_blocks(blocks))
    }

    pub fn ring(&self) -> &'r FusionRing {
        self.ring
    }

    pub fn trivial_component(&self) -> &Subring<'r> {
        &self.trivial_component
    }

    pub fn components(&self) -> &Partition {
        &self.components
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    /// FPdim of each component.
    pub fn component_dims(&self, fp: &FPData) -> Vec<f64> {
        self.components
            .blocks()
            .iter()
            .map(|b| fp.span_dim(b))
            .collect()
    }
}

/// Grading by the cosets of the adjoint subring.
pub fn universal_grading(ring: &FusionRing) -> Result<Grading<'_>> {
    coset_grading(ring, &adjoint_subring(ring))
}

/// Grading by the left cosets of `sub`; fails when these do not form a group.
pub fn coset_grading<'r>(ring: &'r FusionRing, sub: &Subring<'r>) -> Result<Grading<'r>> {
    Grading::from_partition(ring, left_cosets(ring, sub)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub left_cosets_match: bool,
    pub right_cosets_match: bool,
    /// `commutator(C_1)` is the whole basis.
    pub commutator_full: bool,
    /// `radical(C_1)` is the whole basis.
    pub radical_full: bool,
    pub passed: bool,
}

/// Checks a grading against a normal functor whose kernel is the trivial component.
pub fn verify_normal_extension(
    grading: &Grading<'_>,
    witness: &RingFunctor<'_>,
) -> Result<ExtensionReport> {
    let ring = grading.ring;
    if !std::ptr::eq(ring, witness.source()) {
        return Err(Error::RingMismatch);
    }
    let report = witness.validate();
    if !report.is_valid() {
        return Err(Error::InvalidFunctor(format!(
            "{}: {}",
            witness.name(),
            report.violations[0]
        )));
    }
    if !is_normal(witness)? {
        return Err(Error::NotNormal(witness.name().to_string()));
    }
    let c1 = &grading.trivial_component;
    if kernel(witness)?.members() != c1.members() {
        return Err(Error::Grading(
            "witness kernel differs from the trivial component".into(),
        ));
    }
    let left_cosets_match = left_cosets(ring, c1)? == grading.components;
    let right_cosets_match = right_cosets(ring, c1)? == grading.components;
    let commutator_full = commutator(ring, c1).members.len() == ring.rank();
    let radical_full = radical(ring, c1).members.len() == ring.rank();
    Ok(ExtensionReport {
        passed: left_cosets_match && right_cosets_match && commutator_full && radical_full,
        left_cosets_match,
        right_cosets_match,
        commutator_full,
        radical_full,
    })
}

#[derive(Debug, Clone)]
pub struct IntermediateMap<'r> {
    /// Subgroups of the grading group with the subring spanned by their components.
    pub entries: Vec<(Vec<usize>, Subring<'r>)>,
    pub injective: bool,
    /// `None` when the ring is too large for exhaustive enumeration.
    pub surjective: Option<bool>,
}

impl IntermediateMap<'_> {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective == Some(true)
    }
}

/// Sends each subgroup `H` to `⊕_{g∈H} C_g` and compares with every subring containing `C_1`.
pub fn intermediate_subring_map<'r>(grading: &Grading<'r>) -> Result<IntermediateMap<'r>> {
    let ring = grading.ring;
    let mut entries = Vec::new();
    for h in grading.group.subgroups() {
        let members = h
            .iter()
            .flat_map(|&c| grading.components.blocks()[c].iter().copied());
        entries.push((h.clone(), Subring::new(ring, members)?));
    }
    let images: BTreeSet<Vec<usize>> = entries.iter().map(|(_, s)| s.members().to_vec()).collect();
    let injective = images.len() == entries.len();
    let surjective = (ring.rank() <= tol::SUBRING_ENUMERATION_MAX_RANK).then(|| {
        let all: BTreeSet<Vec<usize>> = subrings_containing(ring, &grading.trivial_component)
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        all == images
    });
    Ok(IntermediateMap {
        entries,
        injective,
        surjective,
    })
}

/// `Σ_g FPdim(C_g) − FPdim(C)`.
pub fn component_dim_defect(grading: &Grading<'_>, fp: &FPData) -> f64 {
    (grading.component_dims(fp).iter().sum::<f64>() - fp.ring_dim).abs()
}

/// Whether the unit component of `grading` is the one containing `UNIT`.
pub fn unit_component_is_trivial(grading: &Grading<'_>) -> bool {
    grading.components.block_of(UNIT) == Some(0)
        && grading.components.blocks()[0] == grading.trivial_component.members()
}
