use std::collections::VecDeque;
use std::sync::Arc;

use crate::coh::abgroup::{AbElement, FinAbGroup};
use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::structure::GroupTable;

/// Integer matrix acting on coordinates; row-major, `r × r`.
pub type ActionMatrix = Vec<Vec<i64>>;

/// A finite abelian group `A` with a left action of `G` by automorphisms.
#[derive(Debug, Clone)]
pub struct GModule {
    group: PermGroup,
    ab: FinAbGroup,
    generator_action: Vec<ActionMatrix>,
    table: Arc<GroupTable>,
    /// Reduced action matrix of every element, by element index.
    action: Arc<Vec<ActionMatrix>>,
}

fn reduce(ab: &FinAbGroup, m: &ActionMatrix) -> ActionMatrix {
    let d = ab.invariant_factors();
    m.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|&x| x.rem_euclid(d[i] as i64)).collect())
        .collect()
}

fn matmul(ab: &FinAbGroup, a: &ActionMatrix, b: &ActionMatrix) -> ActionMatrix {
    let r = ab.rank();
    let prod: ActionMatrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| a[i][k] as i128 * b[k][j] as i128).sum::<i128>() as i64)
                .collect()
        })
        .collect();
    reduce(ab, &prod)
}

impl GModule {
    /// Checks that each matrix is a well-defined endomorphism of `A` and that
    /// the assignment extends to an action of the whole group.
    pub fn new(group: PermGroup, ab: FinAbGroup, generator_action: Vec<ActionMatrix>) -> Result<Self> {
        let r = ab.rank();
        let d = ab.invariant_factors().to_vec();
        if generator_action.len() != group.generators().len() {
            return Err(FinisError::InvalidModule(format!(
                "{} matrices for {} generators",
                generator_action.len(),
                group.generators().len()
            )));
        }
        for m in &generator_action {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(FinisError::InvalidModule(format!("action matrix must be {r}x{r}")));
            }
            // column j is the image of the j-th basis element, of order dⱼ
            for i in 0..r {
                for j in 0..r {
                    if (m[i][j] as i128 * d[j] as i128).rem_euclid(d[i] as i128) != 0 {
                        return Err(FinisError::InvalidModule(format!(
                            "entry ({i},{j}) does not respect the orders"
                        )));
                    }
                }
            }
        }
        let table = GroupTable::new(&group)?;
        let n = table.order();
        let elems = group.elements()?;
        let gen_idx: Vec<usize> = group
            .generators()
            .iter()
            .map(|s| group.index_of(s).map(|i| i.expect("generator")))
            .collect::<Result<_>>()?;
        let reduced: Vec<ActionMatrix> = generator_action.iter().map(|m| reduce(&ab, m)).collect();
        let identity: ActionMatrix = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j) % d[i] as i64).collect())
            .collect();
        let mut action: Vec<Option<ActionMatrix>> = vec![None; n];
        action[0] = Some(identity);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = action[x].clone().expect("visited");
            for (k, &s) in gen_idx.iter().enumerate() {
                let y = table.mul(x, s);
                let my = matmul(&ab, &mx, &reduced[k]);
                match &action[y] {
                    None => {
                        action[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(old) if *old != my => return Err(FinisError::ActionNotConsistent),
                    Some(_) => {}
                }
            }
        }
        debug_assert!(elems[0].is_identity());
        let action: Vec<ActionMatrix> = action.into_iter().map(|m| m.expect("connected")).collect();
        Ok(GModule {
            group,
            ab,
            generator_action,
            table: Arc::new(table),
            action: Arc::new(action),
        })
    }

    /// Every element acts as the identity.
    pub fn trivial(group: PermGroup, ab: FinAbGroup) -> Result<Self> {
        let r = ab.rank();
        let id: ActionMatrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let gens = vec![id; group.generators().len()];
        GModule::new(group, ab, gens)
    }

    /// `Z/n` with generators acting by multiplication by the given units.
    pub fn cyclic(group: PermGroup, n: u64, multipliers: &[i64]) -> Result<Self> {
        let ab = FinAbGroup::cyclic(n);
        if ab.is_trivial() {
            return GModule::trivial(group, ab);
        }
        GModule::new(group, ab, multipliers.iter().map(|&k| vec![vec![k]]).collect())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn ab(&self) -> &FinAbGroup {
        &self.ab
    }

    pub fn generator_action(&self) -> &[ActionMatrix] {
        &self.generator_action
    }

    pub(crate) fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub(crate) fn matrix_at(&self, s: usize) -> &ActionMatrix {
        &self.action[s]
    }

    /// `s·a` for the element of index `s`.
    pub fn act_at(&self, s: usize, a: &AbElement) -> AbElement {
        let m = &self.action[s];
        let coords: Vec<i64> = m
            .iter()
            .map(|row| row.iter().zip(&a.coords).map(|(&x, &c)| x as i128 * c as i128).sum::<i128>() as i64)
            .collect();
        self.ab.element(&coords)
    }

    pub fn act(&self, s: &Permutation, a: &AbElement) -> Result<AbElement> {
        let i = self.group.index_of(s)?.ok_or(FinisError::ElementNotInGroup)?;
        Ok(self.act_at(i, a))
    }

    pub fn is_trivial_action(&self) -> bool {
        let r = self.ab.rank();
        self.action
            .iter()
            .all(|m| (0..r).all(|i| (0..r).all(|j| m[i][j] == i64::from(i == j) % self.ab.invariant_factors()[i] as i64)))
    }

    /// Fixed points `A^G`.
    pub fn fixed_points(&self) -> Vec<AbElement> {
        self.ab
            .elements()
            .filter(|a| (0..self.order()).all(|s| self.act_at(s, a) == *a))
            .collect()
    }
}
