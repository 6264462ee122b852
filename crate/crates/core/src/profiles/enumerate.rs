/// Lazy lexicographic enumeration of the compositions of `k` into `m`
/// positive parts.
#[derive(Clone, Debug)]
pub struct CompositionCursor {
    target: u32,
    current: Vec<u32>,
    started: bool,
    done: bool,
}

pub fn compositions(k: u32, m: usize) -> CompositionCursor {
    assert!(m >= 1, "a composition needs at least one part");
    let done = (m as u64) > k as u64;
    let mut current = vec![1; m];
    if !done {
        current[m - 1] = k - (m as u32 - 1);
    }
    CompositionCursor { target: k, current, started: false, done }
}

impl CompositionCursor {
    pub fn target(&self) -> u32 {
        self.target
    }

    /// The composition most recently produced by [`advance`](Self::advance).
    pub fn current(&self) -> &[u32] {
        &self.current
    }

    /// Moves to the next composition; `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let m = self.current.len();
        // rightmost position whose tail still has slack
        let mut tail = 0u32;
        for i in (0..m.saturating_sub(1)).rev() {
            tail += self.current[i + 1];
            let slots = (m - 1 - i) as u32;
            if tail > slots {
                self.current[i] += 1;
                for x in &mut self.current[i + 1..m - 1] {
                    *x = 1;
                }
                self.current[m - 1] = tail - 1 - (slots - 1);
                return true;
            }
        }
        self.done = true;
        false
    }
}

impl Iterator for CompositionCursor {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        self.advance().then(|| self.current.clone())
    }
}

/// Lazy enumeration of ordered set partitions of a ground set into `m`
/// labelled, possibly empty blocks.
///
/// The state is the block label of every ground element, counted in base `m`
/// with the first element as the least significant digit.
#[derive(Clone, Debug)]
pub struct OrderedSetPartitionCursor {
    ground: Vec<usize>,
    parts: usize,
    labels: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn ordered_set_partitions(ground: &[usize], m: usize) -> OrderedSetPartitionCursor {
    assert!(m >= 1, "need at least one block");
    OrderedSetPartitionCursor {
        ground: ground.to_vec(),
        parts: m,
        labels: vec![0; ground.len()],
        started: false,
        done: false,
    }
}

impl OrderedSetPartitionCursor {
    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    /// Block label of each ground element, aligned with [`ground`](Self::ground).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.parts];
        for (&e, &b) in self.ground.iter().zip(&self.labels) {
            out[b].push(e);
        }
        out
    }

    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        for label in &mut self.labels {
            *label += 1;
            if *label < self.parts {
                return true;
            }
            *label = 0;
        }
        self.done = true;
        false
    }
}

impl Iterator for OrderedSetPartitionCursor {
    type Item = Vec<Vec<usize>>;
    fn next(&mut self) -> Option<Vec<Vec<usize>>> {
        self.advance().then(|| self.blocks())
    }
}
