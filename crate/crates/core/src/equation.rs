//! Spherical equations `∏ zᵢ⁻¹·cᵢ·zᵢ = 1` (or `= rhs`) and their solutions.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// An ordered list of constants over a declared group, with an optional
/// right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalEquation {
    group: GroupSpec,
    constants: Vec<GroupElement>,
    rhs: Option<GroupElement>,
}

/// One conjugator per constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub conjugators: Vec<GroupElement>,
}

impl Solution {
    pub fn new(conjugators: Vec<GroupElement>) -> Self {
        Solution { conjugators }
    }

    /// All conjugators equal to the identity.
    pub fn trivial(group: &GroupSpec, len: usize) -> Self {
        Solution { conjugators: vec![group.identity(); len] }
    }

    pub fn len(&self) -> usize {
        self.conjugators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjugators.is_empty()
    }
}

impl SphericalEquation {
    /// Validates the group parameters and membership of every constant.
    pub fn new(group: GroupSpec, constants: Vec<GroupElement>, rhs: Option<GroupElement>) -> Result<Self> {
        group.validate()?;
        for c in constants.iter().chain(rhs.iter()) {
            group.check_member(c)?;
        }
        Ok(SphericalEquation { group, constants, rhs })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn constants(&self) -> &[GroupElement] {
        &self.constants
    }

    pub fn rhs(&self) -> Option<&GroupElement> {
        self.rhs.as_ref()
    }

    /// Number of constants, identities included.
    pub fn num_constants(&self) -> usize {
        self.constants.len()
    }

    /// Number of non-identity constants.
    pub fn length(&self) -> usize {
        self.constants.iter().filter(|c| !self.group.is_identity(c)).count()
    }

    /// `∏ zᵢ⁻¹·cᵢ·zᵢ` for the given conjugators.
    pub fn evaluate(&self, conjugators: &[GroupElement]) -> Result<GroupElement> {
        if conjugators.len() != self.constants.len() {
            return Err(Error::LengthMismatch { expected: self.constants.len(), got: conjugators.len() });
        }
        let g = &self.group;
        let mut acc = g.identity();
        for (c, z) in self.constants.iter().zip(conjugators) {
            g.check_member(z)?;
            acc = g.mul(&acc, &g.conj(c, z));
        }
        Ok(acc)
    }

    /// Target of the product: `rhs` if present, else the identity.
    pub fn target(&self) -> GroupElement {
        self.rhs.clone().unwrap_or_else(|| self.group.identity())
    }
}

/// True iff the solution's product equals the identity (or `rhs`).
pub fn verify(eq: &SphericalEquation, sol: &Solution) -> Result<bool> {
    Ok(eq.evaluate(&sol.conjugators)? == eq.target())
}

/// The rhs-free, identity-free form of an equation together with the data
/// needed to lift its solutions back.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub equation: SphericalEquation,
    /// Original index of each kept constant.
    pub kept: Vec<usize>,
    /// Whether the last constant is the appended `rhs⁻¹`.
    pub rhs_slot: bool,
    original_len: usize,
}

/// Drops identity constants and moves a non-trivial `rhs` into the
/// constants as `rhs⁻¹`.
pub fn normalize(eq: &SphericalEquation) -> Normalized {
    let g = &eq.group;
    let kept: Vec<usize> = (0..eq.constants.len()).filter(|&i| !g.is_identity(&eq.constants[i])).collect();
    let mut constants: Vec<GroupElement> = kept.iter().map(|&i| eq.constants[i].clone()).collect();
    let rhs_slot = match &eq.rhs {
        Some(c) if !g.is_identity(c) => {
            constants.push(g.inv(c));
            true
        }
        _ => false,
    };
    Normalized {
        equation: SphericalEquation { group: g.clone(), constants, rhs: None },
        kept,
        rhs_slot,
        original_len: eq.constants.len(),
    }
}

impl Normalized {
    /// Maps a solution of the normalized equation to one of the original.
    pub fn lift(&self, sol: &Solution) -> Result<Solution> {
        let expected = self.equation.constants.len();
        if sol.len() != expected {
            return Err(Error::LengthMismatch { expected, got: sol.len() });
        }
        let g = &self.equation.group;
        let shift = if self.rhs_slot {
            g.inv(&sol.conjugators[expected - 1])
        } else {
            g.identity()
        };
        let mut out = vec![g.identity(); self.original_len];
        for (slot, &orig) in self.kept.iter().enumerate() {
            out[orig] = g.mul(&sol.conjugators[slot], &shift);
        }
        Ok(Solution::new(out))
    }
}

/// An equation with permuted constants and the solution maps both ways.
/// The reordered equation has `constants[i] = source.constants[perm[i]]`.
#[derive(Debug, Clone)]
pub struct Reordered {
    pub source: SphericalEquation,
    pub equation: SphericalEquation,
    pub perm: Vec<usize>,
}

pub fn reorder_equiv(eq: &SphericalEquation, perm: &[usize]) -> Result<Reordered> {
    let k = eq.constants.len();
    let mut seen = vec![false; k];
    if perm.len() != k {
        return Err(Error::LengthMismatch { expected: k, got: perm.len() });
    }
    for &i in perm {
        if i >= k || seen[i] {
            return Err(Error::Precondition("reordering is not a permutation".into()));
        }
        seen[i] = true;
    }
    let equation = SphericalEquation {
        group: eq.group.clone(),
        constants: perm.iter().map(|&i| eq.constants[i].clone()).collect(),
        rhs: eq.rhs.clone(),
    };
    Ok(Reordered { source: eq.clone(), equation, perm: perm.to_vec() })
}

impl Reordered {
    /// Solution of the source equation → solution of the reordered one.
    pub fn forward(&self, sol: &Solution) -> Result<Solution> {
        let labels: Vec<usize> = (0..self.perm.len()).collect();
        rearrange(&self.source.group, labels, self.source.constants.clone(), sol, &self.perm)
    }

    /// Solution of the reordered equation → solution of the source.
    pub fn backward(&self, sol: &Solution) -> Result<Solution> {
        let target: Vec<usize> = (0..self.perm.len()).collect();
        rearrange(&self.source.group, self.perm.clone(), self.equation.constants.clone(), sol, &target)
    }
}

/// Moves labelled (constant, conjugator) pairs into the `target` label order
/// by adjacent swaps. Swapping `(a, x), (b, y)` gives `(b, y·x⁻¹a⁻¹x), (a, x)`,
/// which keeps the product unchanged.
pub(crate) fn rearrange(
    g: &GroupSpec,
    mut labels: Vec<usize>,
    mut consts: Vec<GroupElement>,
    sol: &Solution,
    target: &[usize],
) -> Result<Solution> {
    if sol.len() != consts.len() {
        return Err(Error::LengthMismatch { expected: consts.len(), got: sol.len() });
    }
    let mut conj = sol.conjugators.clone();
    for pos in 0..target.len() {
        let mut j = labels[pos..]
            .iter()
            .position(|&l| l == target[pos])
            .ok_or_else(|| Error::Internal("label missing during reorder".into()))?
            + pos;
        while j > pos {
            let i = j - 1;
            let (a, x) = (consts[i].clone(), conj[i].clone());
            let ax = g.conj(&g.inv(&a), &x);
            let new_y = g.mul(&conj[j], &ax);
            consts.swap(i, j);
            labels.swap(i, j);
            conj[i] = new_y;
            conj[j] = x;
            j = i;
        }
    }
    Ok(Solution::new(conj))
}
