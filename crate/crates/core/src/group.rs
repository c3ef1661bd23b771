//! Finite groups as explicit multiplication tables, together with a
//! transitive action on the maximal-ideal labels of `S`.
//!
//! Element `0` is always the identity. All operations are plain table
//! scans; groups at desk scale never need more.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("table is not square of size {expected}, row {row} has length {found}")]
    BadTableShape {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("table entry out of range at ({i},{j})")]
    EntryOutOfRange { i: usize, j: usize },
    #[error("NoIdentity: identity law fails at index {at}")]
    NoIdentity { at: usize },
    #[error("NotAssociative at ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("NotPermutationTable: {kind} {index} is not a permutation")]
    NotPermutationTable { kind: &'static str, index: usize },
    #[error("action must have a positive ideal count")]
    EmptyAction,
    #[error("action permutation count {found} does not match group order {expected}")]
    BadActionShape { expected: usize, found: usize },
    #[error("action entry for element {g} is not a permutation of the ideal labels")]
    ActionNotPermutation { g: usize },
    #[error("action of the identity is not the identity permutation")]
    ActionIdentityMoved,
    #[error("ActionNotHomomorphism at elements ({g},{h})")]
    ActionNotHomomorphism { g: usize, h: usize },
    #[error("ActionNotTransitive: label {orphan} is not reachable from label 0")]
    ActionNotTransitive { orphan: usize },
    #[error("SubgroupClosureFailure: set is not closed under multiplication")]
    SubgroupClosureFailure,
    #[error("subgroup does not contain the identity")]
    SubgroupMissingIdentity,
}

/// A finite group given by its full multiplication table.
///
/// `table[i][j]` is the index of `g_i * g_j`; the identity sits at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates the identity, associativity and cancellation laws.
    pub fn validate(order: usize, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if table.len() != order {
            return Err(GroupError::BadTableShape {
                expected: order,
                row: table.len(),
                found: 0,
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::BadTableShape {
                    expected: order,
                    row,
                    found: r.len(),
                });
            }
        }
        for i in 0..order {
            for j in 0..order {
                if table[i][j] >= order {
                    return Err(GroupError::EntryOutOfRange { i, j });
                }
            }
        }
        for j in 0..order {
            if table[0][j] != j {
                return Err(GroupError::NoIdentity { at: j });
            }
            if table[j][0] != j {
                return Err(GroupError::NoIdentity { at: j });
            }
        }
        for i in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for j in 0..order {
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
            if seen_row.iter().any(|s| !s) {
                return Err(GroupError::NotPermutationTable { kind: "row", index: i });
            }
            if seen_col.iter().any(|s| !s) {
                return Err(GroupError::NotPermutationTable { kind: "column", index: i });
            }
        }
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let names = if names.is_empty() {
            (0..order).map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") }).collect()
        } else {
            names
        };
        Ok(FiniteGroup { order, names, table })
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    /// Index of `g^{-1}`, found by scanning row `g` for the identity.
    pub fn inverse(&self, g: usize) -> usize {
        self.table[g].iter().position(|&p| p == 0).expect("validated table has inverses")
    }

    /// Cyclic group of order `n` with generator at index 1.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            })
            .collect();
        FiniteGroup::validate(n, names, table).expect("cyclic table is a group")
    }

    /// Klein four-group C2 x C2.
    pub fn klein_four() -> Self {
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let names = vec!["1", "a", "b", "ab"].into_iter().map(String::from).collect();
        FiniteGroup::validate(4, names, table).expect("klein table is a group")
    }

    /// Symmetric group on three letters, elements ordered
    /// `1, (12), (13), (23), (123), (132)`.
    pub fn symmetric_3() -> Self {
        // Each element as a permutation of {0,1,2}; composition (p*q)(x) = p(q(x)).
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let table = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let c = compose(&perms[i], &perms[j]);
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let names = vec!["1", "(12)", "(13)", "(23)", "(123)", "(132)"]
            .into_iter()
            .map(String::from)
            .collect();
        FiniteGroup::validate(6, names, table).expect("s3 table is a group")
    }

    /// All subgroups, each as a sorted member list, ordered by (size, members).
    ///
    /// Grown by repeatedly adjoining one element to known subgroups and
    /// closing, so the enumeration is complete for any table.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = vec![vec![0usize]];
        while let Some(sub) = frontier.pop() {
            for g in 1..self.order {
                if sub.contains(&g) {
                    continue;
                }
                let mut gens = sub.clone();
                gens.push(g);
                let closed = self.close(&gens);
                if !found.contains(&closed) {
                    found.push(closed.clone());
                    frontier.push(closed);
                }
            }
        }
        found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        found
    }

    fn close(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut stack: Vec<usize> = gens.to_vec();
        for &g in gens {
            members[g] = true;
        }
        while let Some(g) = stack.pop() {
            for h in 0..self.order {
                if !members[h] {
                    continue;
                }
                for p in [self.table[g][h], self.table[h][g], self.inverse(g)] {
                    if !members[p] {
                        members[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        (0..self.order).filter(|&i| members[i]).collect()
    }
}

/// A transitive action of the group on the labels `0..r-1` of the maximal
/// ideals of `S`; `perms[g][m]` is the label of `g(M_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealAction {
    pub count: usize,
    pub perms: Vec<Vec<usize>>,
}

impl IdealAction {
    pub fn validate(count: usize, perms: Vec<Vec<usize>>, group: &FiniteGroup) -> Result<Self, GroupError> {
        if count == 0 {
            return Err(GroupError::EmptyAction);
        }
        if perms.len() != group.order {
            return Err(GroupError::BadActionShape {
                expected: group.order,
                found: perms.len(),
            });
        }
        for (g, p) in perms.iter().enumerate() {
            if p.len() != count {
                return Err(GroupError::ActionNotPermutation { g });
            }
            let mut seen = vec![false; count];
            for &m in p {
                if m >= count || seen[m] {
                    return Err(GroupError::ActionNotPermutation { g });
                }
                seen[m] = true;
            }
        }
        if (0..count).any(|m| perms[0][m] != m) {
            return Err(GroupError::ActionIdentityMoved);
        }
        for g in 0..group.order {
            for h in 0..group.order {
                let gh = group.table[g][h];
                if (0..count).any(|m| perms[gh][m] != perms[g][perms[h][m]]) {
                    return Err(GroupError::ActionNotHomomorphism { g, h });
                }
            }
        }
        // Transitivity: the orbit of label 0 must be everything.
        let mut reached = vec![false; count];
        reached[0] = true;
        let mut stack = vec![0usize];
        while let Some(m) = stack.pop() {
            for p in &perms {
                if !reached[p[m]] {
                    reached[p[m]] = true;
                    stack.push(p[m]);
                }
            }
        }
        if let Some(orphan) = reached.iter().position(|r| !r) {
            return Err(GroupError::ActionNotTransitive { orphan });
        }
        Ok(IdealAction { count, perms })
    }

    /// The one-point action; always transitive.
    pub fn trivial(group: &FiniteGroup) -> Self {
        IdealAction {
            count: 1,
            perms: vec![vec![0]; group.order],
        }
    }

    /// Left translation on the left cosets of `stab`, with the coset of the
    /// identity labelled 0. Transitive by construction.
    pub fn on_cosets(group: &FiniteGroup, stab: &[usize]) -> Self {
        let cosets = left_cosets_of(group, stab);
        let coset_of = |g: usize| cosets.iter().position(|c| c.contains(&g)).unwrap();
        let perms = (0..group.order)
            .map(|g| {
                (0..cosets.len())
                    .map(|m| coset_of(group.table[g][cosets[m][0]]))
                    .collect()
            })
            .collect();
        IdealAction {
            count: cosets.len(),
            perms,
        }
    }
}

fn left_cosets_of(group: &FiniteGroup, sub: &[usize]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; group.order];
    let mut cosets = Vec::new();
    for g in 0..group.order {
        if assigned[g] {
            continue;
        }
        let mut coset: Vec<usize> = sub.iter().map(|&h| group.table[g][h]).collect();
        coset.sort_unstable();
        for &x in &coset {
            assigned[x] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// A validated group together with a transitive ideal action; the abstract
/// stand-in for the data `(K/F, G, S, V)` with `S` unramified over `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisSetup {
    pub group: FiniteGroup,
    pub ideals: IdealAction,
}

impl GaloisSetup {
    pub fn new(group: FiniteGroup, ideals: IdealAction) -> Result<Self, GroupError> {
        let ideals = IdealAction::validate(ideals.count, ideals.perms, &group)?;
        Ok(GaloisSetup { group, ideals })
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    pub fn ideal_count(&self) -> usize {
        self.ideals.count
    }

    /// The C2 setup with two swapped ideals, as in the `Q(i)(x)` instance.
    pub fn builtin_example() -> Self {
        let group = FiniteGroup::cyclic(2);
        let ideals = IdealAction::validate(2, vec![vec![0, 1], vec![1, 0]], &group).unwrap();
        GaloisSetup { group, ideals }
    }

    /// Stabilizer of the ideal label `m`; its index in `G` equals `r`.
    pub fn decomposition_group(&self, m: usize) -> Subgroup {
        let members = (0..self.group.order)
            .filter(|&g| self.ideals.perms[g][m] == m)
            .collect();
        Subgroup {
            members,
        }
    }

    /// Smallest `sub`-stable set of ideal labels containing `m`.
    pub fn orbit(&self, m: usize, sub: &Subgroup) -> Vec<usize> {
        let mut reached = vec![false; self.ideals.count];
        reached[m] = true;
        let mut stack = vec![m];
        while let Some(x) = stack.pop() {
            for &g in &sub.members {
                let y = self.ideals.perms[g][x];
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.ideals.count).filter(|&i| reached[i]).collect()
    }
}

/// A subgroup of the setup's group, kept as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    /// Checks closure under multiplication and inversion.
    pub fn validate(members: Vec<usize>, group: &FiniteGroup) -> Result<Self, GroupError> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if !members.contains(&0) {
            return Err(GroupError::SubgroupMissingIdentity);
        }
        for &a in &members {
            if !members.contains(&group.inverse(a)) {
                return Err(GroupError::SubgroupClosureFailure);
            }
            for &b in &members {
                if !members.contains(&group.table[a][b]) {
                    return Err(GroupError::SubgroupClosureFailure);
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Subgroup {
            members: (0..group.order).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Right cosets `Hg`, each sorted, ordered by smallest member.
    pub fn right_cosets(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; group.order];
        let mut cosets = Vec::new();
        for g in 0..group.order {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.members.iter().map(|&h| group.table[h][g]).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// Left cosets `gH`, each sorted, ordered by smallest member.
    pub fn left_cosets(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        left_cosets_of(group, &self.members)
    }
}
