//! Level storage for the flow vertices of the incremental solver.
//!
//! Flow vertex `2v` is `v_in` and `2v + 1` is `v_out`. Levels are dense in
//! `0..=max`; a merge of layer `l` lowers every level `>= l` by one.

pub trait LevelStore: Default {
    /// Level of flow vertex `x`. Every vertex must have been set once.
    fn level(&mut self, x: usize) -> usize;
    fn set(&mut self, x: usize, l: usize);
    /// Lowers every level `>= l` by one. Returns the work done.
    fn merge(&mut self, l: usize) -> usize;
    /// Room for `count` flow vertices.
    fn reserve(&mut self, _count: usize) {}
}

/// Reference store: one integer per vertex, merges rewrite everything.
#[derive(Debug, Clone, Default)]
pub struct EagerLevels {
    levels: Vec<usize>,
}

impl LevelStore for EagerLevels {
    fn reserve(&mut self, count: usize) {
        self.levels.reserve(count);
    }

    fn level(&mut self, x: usize) -> usize {
        self.levels[x]
    }

    fn set(&mut self, x: usize, l: usize) {
        if x >= self.levels.len() {
            self.levels.resize(x + 1, 0);
        }
        self.levels[x] = l;
    }

    fn merge(&mut self, l: usize) -> usize {
        for lev in &mut self.levels {
            if *lev >= l {
                *lev -= 1;
            }
        }
        self.levels.len()
    }
}

/// Vertices point at layer handles; a merge unions two handles and
/// renumbers the handles above, so it costs O(number of layers).
#[derive(Debug, Clone, Default)]
pub struct LayeredLevels {
    handle: Vec<usize>,
    parent: Vec<usize>,
    level_of: Vec<usize>,
    // live handle for each level
    order: Vec<usize>,
}

impl LayeredLevels {
    fn find(&mut self, mut h: usize) -> usize {
        while self.parent[h] != h {
            let up = self.parent[self.parent[h]];
            self.parent[h] = up;
            h = up;
        }
        h
    }
}

impl LevelStore for LayeredLevels {
    fn reserve(&mut self, count: usize) {
        self.handle.reserve(count);
    }

    fn level(&mut self, x: usize) -> usize {
        let root = self.find(self.handle[x]);
        self.level_of[root]
    }

    fn set(&mut self, x: usize, l: usize) {
        while self.order.len() <= l {
            let h = self.parent.len();
            self.parent.push(h);
            self.level_of.push(self.order.len());
            self.order.push(h);
        }
        if x >= self.handle.len() {
            self.handle.resize(x + 1, 0);
        }
        self.handle[x] = self.order[l];
    }

    fn merge(&mut self, l: usize) -> usize {
        let (upper, lower) = (self.order[l], self.order[l - 1]);
        self.parent[upper] = lower;
        self.order.remove(l);
        for i in l..self.order.len() {
            self.level_of[self.order[i]] = i;
        }
        // the union plus every renumbered layer
        1 + self.order.len() - l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn merge_lowers_upper_levels() {
        let mut s = LayeredLevels::default();
        for (x, l) in [(0, 0), (1, 1), (2, 2), (3, 3)] {
            s.set(x, l);
        }
        s.merge(2);
        assert_eq!((0..4).map(|x| s.level(x)).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        s.set(4, 2);
        s.merge(1);
        assert_eq!((0..5).map(|x| s.level(x)).collect::<Vec<_>>(), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn stores_agree_on_random_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let mut a = EagerLevels::default();
            let mut b = LayeredLevels::default();
            let mut max = 0usize;
            let mut count = 0usize;
            for _ in 0..300 {
                match rng.gen_range(0..4) {
                    0 | 1 => {
                        let x = rng.gen_range(0..=count);
                        let l = rng.gen_range(0..=max + 1);
                        a.set(x, l);
                        b.set(x, l);
                        count = count.max(x + 1);
                        max = max.max(l);
                    }
                    2 if max >= 1 && count > 0 => {
                        // only levels that exist in both stores may be merged
                        let l = rng.gen_range(1..=max);
                        a.merge(l);
                        b.merge(l);
                        max -= 1;
                    }
                    _ => {}
                }
                for x in 0..count {
                    assert_eq!(a.level(x), b.level(x));
                }
            }
        }
    }
}
