//! Depth-first search over edge indicators with exact interval bounds.
//!
//! Every output key `I` carries the integer form `Σ_J c_{I,J} x_J`, where
//! `c_{I,J} = ℓ^k · per(Rᵀ|_{I×J})`. A full assignment is a member exactly
//! when every form lands on `0` or (for square-free `I`) on `ℓ^k`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_traits::ToPrimitive;

use crate::combinatorics::{combinations, is_strictly_increasing, multisets};
use crate::numbers::{Rational, RatMatrix};

pub(crate) struct System {
    pub vars: Vec<Vec<usize>>,
    pub outputs: Vec<Vec<usize>>,
    pub square_free: Vec<bool>,
    pub target: i64,
    /// Per variable: `(form, coefficient)` for every nonzero coefficient.
    pub columns: Vec<Vec<(usize, i64)>>,
    pub mass: Vec<i64>,
}

impl System {
    pub fn build(r: &RatMatrix, k: usize) -> Option<System> {
        let s = r.rows();
        let rt = r.transpose();
        let level = r.level().to_i64()?;
        let scale = level.checked_pow(k as u32)?;
        let scale_r = Rational::from_integer(scale.into());
        let vars: Vec<Vec<usize>> = combinations(s, k).collect();
        let all_outputs = multisets(s, k);
        let mut outputs = Vec::new();
        let mut square_free = Vec::new();
        let mut columns = vec![Vec::new(); vars.len()];
        for out in all_outputs {
            let mut row = Vec::new();
            for (vi, j) in vars.iter().enumerate() {
                let p = rt.submatrix(&out, j).permanent().expect("square") * &scale_r;
                let c = p.to_integer().to_i64()?;
                if c != 0 {
                    row.push((vi, c));
                }
            }
            if row.is_empty() {
                continue;
            }
            let f = outputs.len();
            for (vi, c) in row {
                columns[vi].push((f, c));
            }
            square_free.push(is_strictly_increasing(&out));
            outputs.push(out);
        }
        let mass = columns.iter().map(|col| col.iter().map(|(_, c)| c.abs()).sum()).collect();
        Some(System { vars, outputs, square_free, target: scale, columns, mass })
    }
}

#[derive(Clone)]
pub(crate) struct State {
    lo: Vec<i64>,
    hi: Vec<i64>,
    value: Vec<i8>,
}

impl State {
    pub fn new(sys: &System) -> State {
        let mut lo = vec![0i64; sys.outputs.len()];
        let mut hi = vec![0i64; sys.outputs.len()];
        for col in &sys.columns {
            for &(f, c) in col {
                if c > 0 {
                    hi[f] += c;
                } else {
                    lo[f] += c;
                }
            }
        }
        State { lo, hi, value: vec![-1; sys.vars.len()] }
    }

    fn feasible(&self, sys: &System, f: usize) -> bool {
        let (lo, hi) = (self.lo[f], self.hi[f]);
        (lo <= 0 && 0 <= hi) || (sys.square_free[f] && lo <= sys.target && sys.target <= hi)
    }

    pub fn all_feasible(&self, sys: &System) -> bool {
        (0..sys.outputs.len()).all(|f| self.feasible(sys, f))
    }

    /// Fixes `x_v`. With pruning on, returns false when some touched form can
    /// no longer reach a target.
    pub fn assign(&mut self, sys: &System, v: usize, one: bool, prune: bool) -> bool {
        self.value[v] = one as i8;
        let mut ok = true;
        for &(f, c) in &sys.columns[v] {
            match (one, c > 0) {
                (true, true) => self.lo[f] += c,
                (true, false) => self.hi[f] += c,
                (false, true) => self.hi[f] -= c,
                (false, false) => self.lo[f] -= c,
            }
            if prune && ok && !self.feasible(sys, f) {
                ok = false;
            }
        }
        ok
    }

    pub fn unassign(&mut self, sys: &System, v: usize) {
        let one = self.value[v] == 1;
        for &(f, c) in &sys.columns[v] {
            match (one, c > 0) {
                (true, true) => self.lo[f] -= c,
                (true, false) => self.hi[f] -= c,
                (false, true) => self.hi[f] += c,
                (false, false) => self.lo[f] += c,
            }
        }
        self.value[v] = -1;
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.value.len()).filter(|&v| self.value[v] == 1).collect()
    }

    /// Square-free output keys whose form equals the target; valid once
    /// every variable is fixed.
    pub fn image(&self, sys: &System) -> Vec<usize> {
        (0..sys.outputs.len()).filter(|&f| sys.square_free[f] && self.lo[f] == sys.target).collect()
    }
}

pub(crate) struct Shared<'a> {
    pub sys: &'a System,
    pub prune: bool,
    pub budget: Option<u64>,
    pub nodes: AtomicU64,
    pub exhausted: AtomicBool,
}

impl Shared<'_> {
    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local >= 1024 {
            let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if let Some(b) = self.budget {
                if total > b {
                    self.exhausted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if let Some(b) = self.budget {
            if total > b {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
    }
}

/// Explores every completion of `state` over `order[depth..]`, pushing
/// `(edge vars, image forms)` for each solution.
pub(crate) fn dfs(
    sh: &Shared,
    state: &mut State,
    order: &[usize],
    depth: usize,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let mut local = 0u64;
    dfs_inner(sh, state, order, depth, out, &mut local);
    sh.flush(local);
}

fn dfs_inner(
    sh: &Shared,
    state: &mut State,
    order: &[usize],
    depth: usize,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    local: &mut u64,
) {
    if depth == order.len() {
        if sh.prune || state.all_feasible(sh.sys) {
            out.push((state.ones(), state.image(sh.sys)));
        }
        return;
    }
    let v = order[depth];
    for one in [false, true] {
        if !sh.tick(local) {
            return;
        }
        if state.assign(sh.sys, v, one, sh.prune) {
            dfs_inner(sh, state, order, depth + 1, out, local);
        }
        state.unassign(sh.sys, v);
    }
}

/// Feasible partial states after fixing the first `depth` variables of
/// `order`; used to hand out independent subtrees.
pub(crate) fn frontier(sh: &Shared, state: &mut State, order: &[usize], depth: usize) -> Vec<State> {
    fn go(sh: &Shared, state: &mut State, order: &[usize], d: usize, depth: usize, out: &mut Vec<State>) {
        if d == depth.min(order.len()) {
            out.push(state.clone());
            return;
        }
        let v = order[d];
        for one in [false, true] {
            sh.nodes.fetch_add(1, Ordering::Relaxed);
            if state.assign(sh.sys, v, one, sh.prune) {
                go(sh, state, order, d + 1, depth, out);
            }
            state.unassign(sh.sys, v);
        }
    }
    let mut out = Vec::new();
    go(sh, state, order, 0, depth, &mut out);
    out
}
