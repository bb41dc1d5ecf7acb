use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};

/// A homomorphism between permutation groups, stored on generators and
/// tabulated on every source element at construction time.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    generator_images: Vec<Permutation>,
    table: Arc<Vec<Permutation>>,
}

impl GroupHom {
    /// Validates the map by extending it along a spanning tree of the
    /// Cayley graph of the source and checking every edge.
    pub fn new(source: PermGroup, target: PermGroup, generator_images: Vec<Permutation>) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(FinisError::NotAHomomorphism);
        }
        for t in &generator_images {
            if t.degree() != target.degree() || !target.contains(t)? {
                return Err(FinisError::NotAHomomorphism);
            }
        }
        let elems = source.elements()?;
        let n = elems.len();
        let mut table: Vec<Option<Permutation>> = vec![None; n];
        table[0] = Some(target.identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let img_x = table[i].clone().expect("visited");
            for (s, t) in source.generators().iter().zip(&generator_images) {
                let y = elems[i].compose(s);
                let j = source.index_of(&y)?.expect("closed");
                let img = img_x.compose(t);
                match &table[j] {
                    None => {
                        table[j] = Some(img);
                        queue.push_back(j);
                    }
                    Some(prev) if *prev != img => return Err(FinisError::NotAHomomorphism),
                    Some(_) => {}
                }
            }
        }
        let table = table.into_iter().map(|x| x.expect("connected")).collect();
        Ok(GroupHom {
            source,
            target,
            generator_images,
            table: Arc::new(table),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn image(&self, x: &Permutation) -> Result<&Permutation> {
        let i = self
            .source
            .index_of(x)?
            .ok_or(FinisError::ElementNotInGroup)?;
        Ok(&self.table[i])
    }

    /// Image of the `i`-th source element in sorted order.
    pub fn image_at(&self, i: usize) -> &Permutation {
        &self.table[i]
    }

    pub fn kernel(&self) -> Result<PermGroup> {
        let elems = self.source.elements()?;
        let k: Vec<Permutation> = elems
            .iter()
            .zip(self.table.iter())
            .filter(|(_, img)| img.is_identity())
            .map(|(x, _)| x.clone())
            .collect();
        self.source.subgroup_from_elements(k)
    }

    pub fn image_group(&self) -> Result<PermGroup> {
        let mut imgs: Vec<Permutation> = self.table.iter().cloned().collect();
        imgs.sort_unstable();
        imgs.dedup();
        PermGroup::from_elements(self.target.degree(), imgs, self.target.cap())
    }

    /// `{x ∈ source : φ(x) ∈ sub}`.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        let elems = self.source.elements()?;
        let mut out = Vec::new();
        for (x, img) in elems.iter().zip(self.table.iter()) {
            if sub.contains(img)? {
                out.push(x.clone());
            }
        }
        self.source.subgroup_from_elements(out)
    }

    /// `φ(sub)` for a subgroup of the source.
    pub fn image_of_subgroup(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut imgs = Vec::new();
        for x in sub.elements()? {
            imgs.push(self.image(x)?.clone());
        }
        imgs.sort_unstable();
        imgs.dedup();
        PermGroup::from_elements(self.target.degree(), imgs, self.target.cap())
    }

    pub fn is_injective(&self) -> bool {
        self.table.iter().skip(1).all(|x| !x.is_identity())
    }
}
