//! Expensive consistency checks run after every insertion when auditing is
//! enabled. Everything is recomputed from the raw flow and levels.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::levels::LevelStore;
use super::solver::{Solver, Variant, NIL, UNLISTED};

fn fail<T>(msg: String) -> Result<T> {
    Err(Error::Invariant(msg))
}

impl<L: LevelStore> Solver<L> {
    pub(super) fn audit_pre_merge(
        &mut self,
        v: usize,
        found: Option<usize>,
        old_ends: &[(usize, usize)],
    ) -> Result<()> {
        self.audit_residual_levels()?;

        let mut expected: BTreeSet<usize> = old_ends.iter().map(|&(u, _)| u).collect();
        expected.insert(v);
        if let Some(y) = found {
            expected.remove(&y);
        }
        let actual: BTreeSet<usize> = self.ends.items.iter().copied().collect();
        if actual != expected {
            return fail(format!("insertion {v}: end set {actual:?}, expected {expected:?}"));
        }

        for &(u, before) in old_ends {
            if Some(u) == found {
                continue;
            }
            let now = self.levels.level(2 * u + 1);
            if now != before {
                return fail(format!("insertion {v}: end vertex {u} moved from level {before} to {now}"));
            }
        }
        Ok(())
    }

    /// Invariants A and B.
    fn audit_residual_levels(&mut self) -> Result<()> {
        for y in 0..self.n {
            let (lin, lout) = (self.levels.level(2 * y), self.levels.level(2 * y + 1));
            if lout < lin {
                return fail(format!("reverse split of {y} climbs from {lout} to {lin}"));
            }
            if self.split[y] > 1 && lin != lout {
                return fail(format!("split of {y} carries {} across levels {lin} < {lout}", self.split[y]));
            }
            if self.sink[y] > 0 && (self.sink[y] != 1 || lin >= lout) {
                return fail(format!("end vertex {y}: sink flow {}, levels {lin}, {lout}", self.sink[y]));
            }
            if self.src[y] > 0 && lin != 0 {
                return fail(format!("start vertex {y} sits on level {lin}"));
            }
        }
        for e in 0..self.tail.len() {
            let (a, b) = (self.levels.level(2 * self.tail[e] + 1), self.levels.level(2 * self.head[e]));
            if b < a {
                return fail(format!("reverse of edge {} -> {} climbs", self.tail[e], self.head[e]));
            }
            if self.cflow[e] > 0 && a != b {
                return fail(format!("flow on {} -> {} crosses levels", self.tail[e], self.head[e]));
            }
        }
        Ok(())
    }

    pub(super) fn audit_full(&mut self) -> Result<()> {
        self.audit_residual_levels()?;
        self.audit_flow()?;

        // Invariant C, recomputed from scratch
        let m = self.cut_demand.len();
        let mut demand = vec![0u64; m];
        for y in 0..self.n {
            let (lin, lout) = (self.levels.level(2 * y), self.levels.level(2 * y + 1));
            if lout > m {
                return fail(format!("level {lout} of {y} exceeds top level {m}"));
            }
            for d in demand.iter_mut().take(lout).skip(lin) {
                *d += 1;
            }
        }
        if demand != self.cut_demand {
            return fail(format!("cut demands {:?}, recomputed {demand:?}", self.cut_demand));
        }
        if demand.windows(2).any(|w| w[0] <= w[1]) || demand.last() == Some(&0) {
            return fail(format!("cut demands {demand:?} not strictly decreasing"));
        }
        if demand.first().copied().unwrap_or(0) != self.size {
            return fail(format!("first cut {:?} differs from |f| = {}", demand.first(), self.size));
        }

        for y in 0..self.n {
            if (self.sink[y] > 0) != self.ends.contains(y) {
                return fail(format!("end set disagrees with flow at {y}"));
            }
            let anti = self.levels.level(2 * y) < self.levels.level(2 * y + 1);
            if anti != self.antichain.contains(y) {
                return fail(format!("antichain set disagrees with levels at {y}"));
            }
        }

        match self.variant {
            Variant::K3 => self.audit_cover(),
            Variant::K2 => self.audit_path_ids(),
        }
    }

    fn audit_flow(&mut self) -> Result<()> {
        let mut into = self.src.clone();
        let mut out_of = self.sink.clone();
        for e in 0..self.tail.len() {
            into[self.head[e]] += self.cflow[e];
            out_of[self.tail[e]] += self.cflow[e];
            let listed = self.pos_prev[e] != UNLISTED;
            if listed != (self.cflow[e] > 0) {
                return fail(format!("positive-flow list out of sync at edge {e}"));
            }
        }
        let mut walked = 0;
        for u in 0..self.n {
            let (mut prev, mut e) = (NIL, self.pos_first[u]);
            while e != NIL {
                if self.tail[e] != u || self.pos_prev[e] != prev || self.cflow[e] == 0 {
                    return fail(format!("positive-flow list of {u} is corrupt at edge {e}"));
                }
                walked += 1;
                (prev, e) = (e, self.pos_next[e]);
            }
        }
        if walked != self.cflow.iter().filter(|&&f| f > 0).count() {
            return fail("positive-flow lists miss an edge".into());
        }
        for y in 0..self.n {
            if self.split[y] == 0 || into[y] != self.split[y] || out_of[y] != self.split[y] {
                return fail(format!(
                    "flow at {y}: in {}, split {}, out {}",
                    into[y], self.split[y], out_of[y]
                ));
            }
        }
        if self.src.iter().sum::<u64>() != self.size {
            return fail("source flow differs from |f|".into());
        }
        Ok(())
    }

    fn audit_cover(&mut self) -> Result<()> {
        if self.paths.len() as u64 != self.size {
            return fail(format!("{} paths for |f| = {}", self.paths.len(), self.size));
        }
        let mut split = vec![0u64; self.n];
        let mut src = vec![0u64; self.n];
        let mut sink = vec![0u64; self.n];
        let mut cross = vec![0u64; self.tail.len()];
        for (p, path) in self.paths.iter().enumerate() {
            let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
                return fail(format!("path {p} is empty"));
            };
            src[first] += 1;
            sink[last] += 1;
            for (i, &y) in path.iter().enumerate() {
                split[y] += 1;
                if self.split[y] == 1 && (self.pid[y], self.ppos[y]) != (p, i) {
                    return fail(format!("stale position for {y}"));
                }
                if let Some(&z) = path.get(i + 1) {
                    match (self.in_start[z]..self.in_start[z + 1]).find(|&e| self.tail[e] == y) {
                        Some(e) => cross[e] += 1,
                        None => return fail(format!("path {p} uses missing edge {y} -> {z}")),
                    }
                }
            }
        }
        for y in 0..self.n {
            let (p, i) = (self.pid[y], self.ppos[y]);
            if self.paths.get(p).and_then(|path| path.get(i)) != Some(&y) {
                return fail(format!("position of {y} points elsewhere"));
            }
        }
        if split != self.split || src != self.src || sink != self.sink || cross != self.cflow {
            return fail("cover does not decompose the flow".into());
        }
        Ok(())
    }

    /// Vertices sharing a path id must form a chain of the inserted graph.
    fn audit_path_ids(&mut self) -> Result<()> {
        let mut classes = vec![Vec::new(); self.size as usize];
        for y in 0..self.n {
            let id = self.path_id(y);
            match classes.get_mut(id) {
                Some(class) => class.push(y),
                None => return fail(format!("vertex {y} has path id {id} >= |f| = {}", self.size)),
            }
        }
        for class in &classes {
            for w in class.windows(2) {
                if !self.raw_reaches(w[0], w[1]) {
                    return fail(format!("{} and {} share a path id but are incomparable", w[0], w[1]));
                }
            }
        }
        Ok(())
    }

    /// Reachability in the unsparsified inserted graph, for `a < b`.
    fn raw_reaches(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; b + 1];
        let mut stack = vec![b];
        seen[b] = true;
        while let Some(x) = stack.pop() {
            if x == a {
                return true;
            }
            for &u in &self.raw_in[x] {
                if u >= a && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        false
    }
}
