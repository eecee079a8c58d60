//! Enumerable groups: conjugacy classes, the reachable-set decision procedure,
//! the brute-force oracle and saturation lengths.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::equation::{normalize, verify, Normalized, Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Groups up to this order keep a full multiplication table.
const TABLE_CAP: usize = 2048;

/// Largest conjugate-tuple search `solve_brute` will attempt.
const BRUTE_STATE_CAP: u128 = 100_000_000;

/// Partition of an enumerated group into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassTable {
    /// Element indices of each class; the first entry is the representative.
    pub classes: Vec<Vec<u32>>,
    /// Class index of every element.
    pub class_of: Vec<u32>,
    /// For each element `h`, some `w` with `w⁻¹·rep·w = h`.
    pub witness: Vec<u32>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A fully enumerated group with indexed elements.
pub struct FiniteGroup {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    identity: u32,
    classes: OnceLock<ConjClassTable>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({} of order {})", self.spec.family().name(), self.elements.len())
    }
}

impl FiniteGroup {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let elements = spec.enumerate()?;
        let n = elements.len();
        let index: HashMap<GroupElement, u32> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let identity = index[&spec.identity()];
        let lookup = |e: &GroupElement| index[e];
        let table = if n <= TABLE_CAP {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&spec.mul(a, b)));
                }
            }
            Some(t)
        } else {
            None
        };
        let inverse = elements.iter().map(|e| lookup(&spec.inv(e))).collect();
        Ok(FiniteGroup {
            spec: spec.clone(),
            elements,
            index,
            table,
            inverse,
            identity,
            classes: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<u32> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::MalformedElement(format!("{e:?} is not in the group")))
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.spec.mul(&self.elements[a as usize], &self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `z⁻¹·c·z`
    #[inline]
    pub fn conj(&self, c: u32, z: u32) -> u32 {
        self.mul(self.mul(self.inv(z), c), z)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<u32> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut gens = Vec::new();
        for g in 0..n as u32 {
            if inside[g as usize] {
                continue;
            }
            gens.push(g);
            // Close the subgroup under right multiplication by all generators.
            let mut queue: VecDeque<u32> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }

    /// Conjugacy classes by orbit search under a generating set, computed once.
    pub fn conjugacy_classes(&self) -> &ConjClassTable {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generators();
            let mut class_of = vec![u32::MAX; n];
            let mut witness = vec![u32::MAX; n];
            let mut classes = Vec::new();
            // identity first, then in index order
            let order = std::iter::once(self.identity).chain((0..n as u32).filter(|&g| g != self.identity));
            for rep in order {
                if class_of[rep as usize] != u32::MAX {
                    continue;
                }
                let cid = classes.len() as u32;
                let mut members = vec![rep];
                class_of[rep as usize] = cid;
                witness[rep as usize] = self.identity;
                let mut queue = VecDeque::from([rep]);
                while let Some(h) = queue.pop_front() {
                    let w = witness[h as usize];
                    for &s in &gens {
                        let h2 = self.conj(h, s);
                        if class_of[h2 as usize] == u32::MAX {
                            class_of[h2 as usize] = cid;
                            witness[h2 as usize] = self.mul(w, s);
                            members.push(h2);
                            queue.push_back(h2);
                        }
                    }
                }
                classes.push(members);
            }
            ConjClassTable { classes, class_of, witness }
        })
    }

    /// Some `z` with `z⁻¹·c·z = h`, for `h` conjugate to `c`.
    pub fn conjugator(&self, c: u32, h: u32) -> Option<u32> {
        let ct = self.conjugacy_classes();
        if ct.class_of[c as usize] != ct.class_of[h as usize] {
            return None;
        }
        // rep = u·c·u⁻¹ and h = w⁻¹·rep·w, so z = u⁻¹·w
        let u = ct.witness[c as usize];
        Some(self.mul(self.inv(u), ct.witness[h as usize]))
    }

    fn nontrivial(&self, constants: &[u32]) -> Vec<usize> {
        (0..constants.len()).filter(|&i| constants[i] != self.identity).collect()
    }

    /// Decision by the reachable sets `V_{j+1} = V_j · class(c_{j+1})`.
    pub fn decide_indices(&self, constants: &[u32]) -> bool {
        let ct = self.conjugacy_classes();
        let n = self.order();
        let mut reach = vec![false; n];
        reach[self.identity as usize] = true;
        for i in self.nontrivial(constants) {
            let class = &ct.classes[ct.class_of[constants[i] as usize] as usize];
            let mut next = vec![false; n];
            for v in (0..n).filter(|&v| reach[v]) {
                for &h in class {
                    next[self.mul(v as u32, h) as usize] = true;
                }
            }
            reach = next;
        }
        reach[self.identity as usize]
    }

    /// The reachable-set procedure with back-pointers. Identity constants get
    /// the identity conjugator.
    pub fn solve_indices(&self, constants: &[u32]) -> Option<Vec<u32>> {
        let ct = self.conjugacy_classes();
        let n = self.order();
        let active = self.nontrivial(constants);
        // back[j][g] = conjugate h_j used to first reach g at step j
        let mut back: Vec<Vec<u32>> = Vec::with_capacity(active.len());
        let mut reach = vec![false; n];
        reach[self.identity as usize] = true;
        for &i in &active {
            let class = &ct.classes[ct.class_of[constants[i] as usize] as usize];
            let mut next = vec![u32::MAX; n];
            for v in (0..n).filter(|&v| reach[v]) {
                for &h in class {
                    let g = self.mul(v as u32, h) as usize;
                    if next[g] == u32::MAX {
                        next[g] = h;
                    }
                }
            }
            reach = next.iter().map(|&h| h != u32::MAX).collect();
            back.push(next);
        }
        if !reach[self.identity as usize] {
            return None;
        }
        let mut z = vec![self.identity; constants.len()];
        let mut g = self.identity;
        for (step, &i) in active.iter().enumerate().rev() {
            let h = back[step][g as usize];
            z[i] = self.conjugator(constants[i], h).expect("h is conjugate to the constant");
            g = self.mul(g, self.inv(h));
        }
        debug_assert_eq!(g, self.identity);
        Some(z)
    }

    /// Exhaustive search over tuples of conjugates, computed directly as
    /// `{z⁻¹cz : z ∈ G}` without the class table. Repeated (position, prefix)
    /// states are pruned.
    pub fn solve_brute_indices(&self, constants: &[u32]) -> Result<Option<Vec<u32>>> {
        let n = self.order();
        let active = self.nontrivial(constants);
        // conjugates of each constant with the first z producing them
        let mut conjugates: Vec<Vec<(u32, u32)>> = Vec::with_capacity(active.len());
        let mut states: u128 = 0;
        for &i in &active {
            let mut seen = HashMap::new();
            for z in 0..n as u32 {
                seen.entry(self.conj(constants[i], z)).or_insert(z);
            }
            let mut list: Vec<(u32, u32)> = seen.into_iter().collect();
            list.sort_unstable();
            states += n as u128 * list.len() as u128;
            conjugates.push(list);
        }
        if states > BRUTE_STATE_CAP {
            return Err(Error::TooLarge(format!("brute-force search over {states} states")));
        }
        let mut visited: Vec<HashSet<u32>> = vec![HashSet::new(); active.len() + 1];
        let mut chosen = Vec::with_capacity(active.len());
        if !self.brute_dfs(&conjugates, 0, self.identity, &mut visited, &mut chosen) {
            return Ok(None);
        }
        let mut z = vec![self.identity; constants.len()];
        for (slot, &i) in active.iter().enumerate() {
            z[i] = chosen[slot];
        }
        Ok(Some(z))
    }

    fn brute_dfs(
        &self,
        conjugates: &[Vec<(u32, u32)>],
        pos: usize,
        prefix: u32,
        visited: &mut [HashSet<u32>],
        chosen: &mut Vec<u32>,
    ) -> bool {
        if pos == conjugates.len() {
            return prefix == self.identity;
        }
        if !visited[pos].insert(prefix) {
            return false;
        }
        for &(h, z) in &conjugates[pos] {
            chosen.push(z);
            if self.brute_dfs(conjugates, pos + 1, self.mul(prefix, h), visited, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Table of class products: bit `c` of `prod[a][b]` is set iff class `c`
    /// meets `C_a·C_b`.
    fn class_products(&self) -> Vec<Vec<u128>> {
        let ct = self.conjugacy_classes();
        let r = ct.len();
        (0..r)
            .map(|a| {
                let rep = ct.classes[a][0];
                (0..r)
                    .map(|b| {
                        ct.classes[b]
                            .iter()
                            .fold(0u128, |m, &h| m | 1u128 << ct.class_of[self.mul(rep, h) as usize])
                    })
                    .collect()
            })
            .collect()
    }

    /// Least `L` such that every equation with at least `L` non-identity
    /// constants is solvable, or `None` if there is no such `L`.
    pub fn saturation_length(&self) -> Result<Option<usize>> {
        let n = self.order();
        if n == 1 {
            return Ok(Some(0));
        }
        let ct = self.conjugacy_classes();
        let r = ct.len();
        if r > 128 {
            return Err(Error::TooLarge(format!("{r} conjugacy classes")));
        }
        if r == n {
            // abelian: solvable iff ∏cᵢ = 1, which fails for some tuple of every length
            return Ok(None);
        }
        let prod = self.class_products();
        let id_class = ct.class_of[self.identity as usize] as usize;
        let step = |family: &Vec<u128>| -> Vec<u128> {
            let mut out: Vec<u128> = Vec::new();
            let mut seen = HashSet::new();
            for &mask in family {
                for c in (0..r).filter(|&c| c != id_class) {
                    let mut m = 0u128;
                    for a in (0..r).filter(|&a| mask >> a & 1 == 1) {
                        m |= prod[a][c];
                    }
                    if seen.insert(m) {
                        out.push(m);
                    }
                }
            }
            out.sort_unstable();
            out
        };
        let good = |family: &Vec<u128>| family.iter().all(|&m| m >> id_class & 1 == 1);
        let bound = (n as u128).pow(3);
        let mut history: Vec<bool> = Vec::new();
        let mut first_seen: HashMap<Vec<u128>, usize> = HashMap::new();
        let mut family: Vec<u128> = (0..r).filter(|&c| c != id_class).map(|c| 1u128 << c).collect();
        family.sort_unstable();
        let mut len = 1usize;
        loop {
            if let Some(&start) = first_seen.get(&family) {
                // F_len = F_start: the sequence is periodic from `start` on.
                if !history[start - 1..].iter().all(|&g| g) {
                    return Ok(None);
                }
                let mut l = start;
                while l > 1 && history[l - 2] {
                    l -= 1;
                }
                return Ok(Some(l));
            }
            if len as u128 > bound {
                return Ok(None);
            }
            first_seen.insert(family.clone(), len);
            history.push(good(&family));
            family = step(&family);
            len += 1;
        }
    }
}

/// Indices of the constants of an equation over an enumerable group.
fn index_constants(fg: &FiniteGroup, eq: &SphericalEquation) -> Result<Vec<u32>> {
    eq.constants().iter().map(|c| fg.index_of(c)).collect()
}

fn to_solution(fg: &FiniteGroup, z: &[u32]) -> Solution {
    Solution::new(z.iter().map(|&i| fg.element(i).clone()).collect())
}

pub fn conjugacy_classes(spec: &GroupSpec) -> Result<ConjClassTable> {
    Ok(FiniteGroup::new(spec)?.conjugacy_classes().clone())
}

pub fn decide_cayley(eq: &SphericalEquation) -> Result<bool> {
    let norm = normalize(eq);
    let fg = FiniteGroup::new(eq.group())?;
    Ok(fg.decide_indices(&index_constants(&fg, &norm.equation)?))
}

fn lift_checked(eq: &SphericalEquation, norm: &Normalized, fg: &FiniteGroup, z: &[u32]) -> Result<Solution> {
    let sol = norm.lift(&to_solution(fg, z))?;
    if !verify(eq, &sol)? {
        return Err(Error::Internal("constructed solution does not verify".into()));
    }
    Ok(sol)
}

/// Constructive form of [`decide_cayley`].
pub fn solve_cayley(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let norm = normalize(eq);
    let fg = FiniteGroup::new(eq.group())?;
    match fg.solve_indices(&index_constants(&fg, &norm.equation)?) {
        Some(z) => Ok(Some(lift_checked(eq, &norm, &fg, &z)?)),
        None => Ok(None),
    }
}

/// Independent exhaustive oracle.
pub fn solve_brute(eq: &SphericalEquation) -> Result<Option<Solution>> {
    let norm = normalize(eq);
    let fg = FiniteGroup::new(eq.group())?;
    match fg.solve_brute_indices(&index_constants(&fg, &norm.equation)?)? {
        Some(z) => Ok(Some(lift_checked(eq, &norm, &fg, &z)?)),
        None => Ok(None),
    }
}

pub fn saturation_length(spec: &GroupSpec) -> Result<Option<usize>> {
    FiniteGroup::new(spec)?.saturation_length()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    fn table(t: CayleyTable) -> GroupSpec {
        GroupSpec::Cayley(t)
    }

    #[test]
    fn class_counts() {
        let s3 = conjugacy_classes(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let mut sizes = s3.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let z5 = conjugacy_classes(&table(CayleyTable::cyclic(5).unwrap())).unwrap();
        assert_eq!(z5.sizes(), vec![1; 5]);
        assert_eq!(conjugacy_classes(&GroupSpec::Dihedral { n: 4 }).unwrap().len(), 5);
        assert_eq!(conjugacy_classes(&GroupSpec::Alternating { n: 5 }).unwrap().len(), 5);
    }

    #[test]
    fn classes_closed_under_conjugation() {
        let fg = FiniteGroup::new(&GroupSpec::Gl2 { p: 3 }).unwrap();
        let ct = fg.conjugacy_classes();
        let n = fg.order() as u32;
        for g in 0..n {
            for z in 0..n {
                assert_eq!(ct.class_of[g as usize], ct.class_of[fg.conj(g, z) as usize]);
            }
            let rep = ct.classes[ct.class_of[g as usize] as usize][0];
            assert_eq!(fg.conj(rep, ct.witness[g as usize]), g);
        }
        assert_eq!(ct.classes.iter().map(Vec::len).sum::<usize>(), fg.order());
    }

    #[test]
    fn two_distinct_transpositions_in_s3() {
        let g = GroupSpec::Symmetric { n: 3 };
        let els = g.enumerate().unwrap();
        let t: Vec<_> = els.iter().filter(|e| e.as_perm().unwrap().sign() == -1).cloned().collect();
        let eq = SphericalEquation::new(g, vec![t[0].clone(), t[1].clone()], None).unwrap();
        assert!(decide_cayley(&eq).unwrap());
        assert!(verify(&eq, &solve_cayley(&eq).unwrap().unwrap()).unwrap());
        assert!(verify(&eq, &solve_brute(&eq).unwrap().unwrap()).unwrap());
    }

    #[test]
    fn single_nontrivial_constant_unsolvable() {
        for g in [GroupSpec::Symmetric { n: 4 }, GroupSpec::Dihedral { n: 5 }, GroupSpec::Ut4 { p: 2 }] {
            for c in g.enumerate().unwrap().into_iter().filter(|c| !g.is_identity(c)) {
                let eq = SphericalEquation::new(g.clone(), vec![c], None).unwrap();
                assert!(!decide_cayley(&eq).unwrap());
                assert!(solve_brute(&eq).unwrap().is_none());
            }
        }
    }

    #[test]
    fn abelian_criterion_is_product() {
        let g = table(CayleyTable::cyclic(6).unwrap());
        for a in 0..6u32 {
            for b in 0..6u32 {
                let eq = SphericalEquation::new(g.clone(), vec![GroupElement::Index(a), GroupElement::Index(b)], None)
                    .unwrap();
                assert_eq!(decide_cayley(&eq).unwrap(), (a + b) % 6 == 0);
            }
        }
    }

    #[test]
    fn empty_and_inverse_pair() {
        let g = GroupSpec::Symmetric { n: 4 };
        let eq = SphericalEquation::new(g.clone(), vec![], None).unwrap();
        assert_eq!(solve_brute(&eq).unwrap().unwrap().len(), 0);
        for c in g.enumerate().unwrap().into_iter().take(10) {
            let eq = SphericalEquation::new(g.clone(), vec![c.clone(), g.inv(&c)], None).unwrap();
            let sol = solve_brute(&eq).unwrap().unwrap();
            assert!(verify(&eq, &sol).unwrap());
        }
    }

    #[test]
    fn dp_matches_brute_small_groups() {
        let groups = [
            GroupSpec::Symmetric { n: 3 },
            GroupSpec::Dihedral { n: 4 },
            table(CayleyTable::cyclic(4).unwrap()),
            GroupSpec::Heisenberg { n: 3, p: 2 },
        ];
        for g in groups {
            let fg = FiniteGroup::new(&g).unwrap();
            let n = fg.order() as u32;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let cs = [a, b, c];
                        let d = fg.decide_indices(&cs);
                        let brute = fg.solve_brute_indices(&cs).unwrap();
                        assert_eq!(d, brute.is_some());
                        if let Some(z) = fg.solve_indices(&cs) {
                            let prod = (0..3).fold(fg.identity(), |acc, i| fg.mul(acc, fg.conj(cs[i], z[i])));
                            assert_eq!(prod, fg.identity());
                        } else {
                            assert!(!d);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation_length(&table(CayleyTable::cyclic(2).unwrap())).unwrap(), None);
        assert_eq!(saturation_length(&table(CayleyTable::cyclic(1).unwrap())).unwrap(), Some(0));
        assert_eq!(saturation_length(&GroupSpec::Symmetric { n: 3 }).unwrap(), None);
        let a5 = saturation_length(&GroupSpec::Alternating { n: 5 }).unwrap().unwrap();
        assert!(a5 >= 2 && a5 <= 60usize.pow(3) - 60 + 1);
    }

    #[test]
    fn too_large_groups_rejected() {
        let eq = SphericalEquation::new(GroupSpec::Symmetric { n: 9 }, vec![], None).unwrap();
        assert!(matches!(decide_cayley(&eq), Err(Error::TooLarge(_))));
    }
}
