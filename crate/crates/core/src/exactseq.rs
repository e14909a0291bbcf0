//! Dimension bookkeeping for long exact sequences of finite-dimensional
//! Q-vector spaces.
//!
//! An instance is a finite segment of a long exact sequence (or a cyclic
//! one). Exactness is imposed at every slot that has both neighbours in
//! the segment. The solver never guesses: a slot becomes known only when
//! the constraints force its value.

use crate::dims::DimensionValue;
use crate::error::{Error, Result};
use crate::rational::Q;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub label: String,
    pub state: DimensionValue,
    /// Where the value came from.
    pub note: String,
}

impl Slot {
    pub fn new(label: impl Into<String>, state: DimensionValue) -> Slot {
        Slot { label: label.into(), state, note: String::new() }
    }

    pub fn unknown(label: impl Into<String>) -> Slot {
        Slot::new(label, DimensionValue::Unknown)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Slot {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LESInstance {
    pub slots: Vec<Slot>,
    pub cyclic: bool,
    /// Known ranks of the map from slot `k` to the next slot.
    pub map_ranks: BTreeMap<usize, u64>,
}

/// Deduction rules, in the order the solver tries them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// A slot between two zeros is zero.
    R1,
    /// `0 → A → B → 0`.
    R2,
    /// `0 → A → B → C → 0`.
    R3,
    /// Alternating sums over zero-flanked windows, or any linear
    /// consequence of the exactness relations.
    R4,
    /// Injectivity or surjectivity forced by a neighbouring zero.
    R5,
    /// Deductions that use supplied map ranks.
    R6,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rule> {
        Ok(match s {
            "R1" => Rule::R1,
            "R2" => Rule::R2,
            "R3" => Rule::R3,
            "R4" => Rule::R4,
            "R5" => Rule::R5,
            "R6" => Rule::R6,
            _ => return Err(Error::Parse { pos: 0, msg: format!("unknown rule {s}") }),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deduction {
    pub rule: Rule,
    /// The slot whose state was set, if any.
    pub slot: Option<usize>,
    pub value: Option<DimensionValue>,
    /// First and last slot of the window used.
    pub window: (usize, usize),
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub instance: LESInstance,
    pub log: Vec<Deduction>,
}

impl LESInstance {
    pub fn new(slots: Vec<Slot>, cyclic: bool) -> LESInstance {
        LESInstance { slots, cyclic, map_ranks: BTreeMap::new() }
    }

    /// Build from states with labels `X0, X1, ...`.
    pub fn from_states(states: &[DimensionValue], cyclic: bool) -> LESInstance {
        let slots = states.iter().enumerate().map(|(i, s)| Slot::new(format!("X{i}"), s.clone())).collect();
        LESInstance::new(slots, cyclic)
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn states(&self) -> Vec<DimensionValue> {
        self.slots.iter().map(|s| s.state.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.label == label)
    }

    fn nmaps(&self) -> usize {
        let n = self.len();
        if self.cyclic {
            n
        } else {
            n.saturating_sub(1)
        }
    }

    /// Slots where exactness holds, with the indices of the incoming and
    /// outgoing maps.
    fn nodes(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        if self.cyclic {
            (0..n).map(|k| (k, (k + n - 1) % n, k)).collect()
        } else {
            (1..n.saturating_sub(1)).map(|k| (k, k - 1, k)).collect()
        }
    }

    fn next(&self, k: usize) -> Option<usize> {
        if k + 1 < self.len() {
            Some(k + 1)
        } else if self.cyclic {
            Some(0)
        } else {
            None
        }
    }

    fn prev(&self, k: usize) -> Option<usize> {
        if k > 0 {
            Some(k - 1)
        } else if self.cyclic {
            Some(self.len() - 1)
        } else {
            None
        }
    }

    /// Machine-readable `key=value` lines.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("les.cyclic={}\n", self.cyclic));
        out.push_str(&format!("les.slots={}\n", self.len()));
        for (i, s) in self.slots.iter().enumerate() {
            out.push_str(&format!("slot.{i}.label={}\n", s.label));
            out.push_str(&format!("slot.{i}.state={}\n", state_to_machine(&s.state)));
            if !s.note.is_empty() {
                out.push_str(&format!("slot.{i}.note={}\n", s.note));
            }
        }
        for (m, r) in &self.map_ranks {
            out.push_str(&format!("map.{m}.rank={r}\n"));
        }
        out
    }

    pub fn from_machine(text: &str) -> Result<LESInstance> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let mut cyclic = false;
        let mut slots: Vec<Slot> = Vec::new();
        let mut ranks = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("no '=' in {line:?}")))?;
            let parts: Vec<&str> = k.split('.').collect();
            match parts.as_slice() {
                ["les", "cyclic"] => cyclic = v == "true",
                ["les", "slots"] => {
                    let n: usize = v.parse().map_err(|_| bad(format!("bad slot count {v}")))?;
                    slots = (0..n).map(|i| Slot::unknown(format!("X{i}"))).collect();
                }
                ["slot", i, field] => {
                    let i: usize = i.parse().map_err(|_| bad(format!("bad slot index {i}")))?;
                    let s = slots.get_mut(i).ok_or_else(|| bad(format!("slot {i} out of range")))?;
                    match *field {
                        "label" => s.label = v.to_string(),
                        "state" => s.state = state_from_machine(v)?,
                        "note" => s.note = v.to_string(),
                        _ => return Err(bad(format!("unknown field {field}"))),
                    }
                }
                ["map", m, "rank"] => {
                    let m: usize = m.parse().map_err(|_| bad(format!("bad map index {m}")))?;
                    ranks.insert(m, v.parse().map_err(|_| bad(format!("bad rank {v}")))?);
                }
                _ => return Err(bad(format!("unknown key {k}"))),
            }
        }
        Ok(LESInstance { slots, cyclic, map_ranks: ranks })
    }
}

pub fn state_to_machine(s: &DimensionValue) -> String {
    match s {
        DimensionValue::Known(d) => format!("known:{d}"),
        DimensionValue::Zero => "zero".into(),
        DimensionValue::Unknown => "unknown".into(),
        DimensionValue::Symbolic(d) => format!("symbolic:{d}"),
    }
}

pub fn state_from_machine(s: &str) -> Result<DimensionValue> {
    if let Some(d) = s.strip_prefix("known:") {
        return d.parse().map(DimensionValue::Known).map_err(|_| Error::Parse { pos: 0, msg: format!("bad dimension {d}") });
    }
    if let Some(d) = s.strip_prefix("symbolic:") {
        return Ok(DimensionValue::Symbolic(d.to_string()));
    }
    match s {
        "zero" => Ok(DimensionValue::Zero),
        "unknown" => Ok(DimensionValue::Unknown),
        _ => Err(Error::Parse { pos: 0, msg: format!("bad state {s}") }),
    }
}

impl Deduction {
    pub fn to_machine(&self) -> String {
        let slot = self.slot.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let value = self.value.as_ref().map(state_to_machine).unwrap_or_else(|| "-".into());
        format!("{} slot={} value={} window={}..{} {}", self.rule, slot, value, self.window.0, self.window.1, self.message)
    }
}

fn is_zero(s: &DimensionValue) -> bool {
    s.is_zero()
}

fn inconsistent(les: &LESInstance, window: (usize, usize), why: &str) -> Error {
    let labels: Vec<&str> = window_indices(les, window).iter().map(|&i| les.slots[i].label.as_str()).collect();
    Error::Inconsistent(format!("{why} in window {}..{} [{}]", window.0, window.1, labels.join(", ")))
}

fn window_indices(les: &LESInstance, (a, b): (usize, usize)) -> Vec<usize> {
    let n = les.len();
    let mut out = vec![a];
    let mut k = a;
    while k != b {
        k = (k + 1) % n;
        out.push(k);
    }
    out
}

/// Apply the deduction rules until nothing changes.
pub fn solve(les: &LESInstance) -> Result<Solution> {
    let mut cur = les.clone();
    let mut log = Vec::new();
    let mut logged_maps: BTreeSet<(usize, bool)> = BTreeSet::new();
    check_ranks(&cur)?;
    loop {
        let mut changed = rule_flanked(&mut cur, &mut log)?;
        changed |= rule_windows(&mut cur, &mut log)?;
        rule_map_properties(&cur, &mut log, &mut logged_maps);
        changed |= linear_pass(&mut cur, &mut log)?;
        if !changed {
            break;
        }
    }
    Ok(Solution { instance: cur, log })
}

fn check_ranks(les: &LESInstance) -> Result<()> {
    for (&m, &r) in &les.map_ranks {
        if m >= les.nmaps() {
            return Err(Error::InvalidInput(format!("map {m} does not exist")));
        }
        let a = m;
        let b = (m + 1) % les.len();
        for s in [a, b] {
            if let Some(d) = les.slots[s].state.as_known() {
                if r > d {
                    return Err(inconsistent(les, (a, b), &format!("map rank {r} exceeds a dimension")));
                }
            }
        }
    }
    Ok(())
}

fn rule_flanked(les: &mut LESInstance, log: &mut Vec<Deduction>) -> Result<bool> {
    let mut changed = false;
    for (k, _, _) in les.nodes() {
        let (p, n) = (les.prev(k).unwrap(), les.next(k).unwrap());
        if !(is_zero(&les.slots[p].state) && is_zero(&les.slots[n].state)) {
            continue;
        }
        match &les.slots[k].state {
            DimensionValue::Unknown => {
                les.slots[k].state = DimensionValue::Zero;
                log.push(Deduction {
                    rule: Rule::R1,
                    slot: Some(k),
                    value: Some(DimensionValue::Zero),
                    window: (p, n),
                    message: format!("{} lies between two zeros", les.slots[k].label),
                });
                changed = true;
            }
            s if s.is_zero() => {}
            _ => return Err(inconsistent(les, (p, n), "nonzero slot between two zeros")),
        }
    }
    Ok(changed)
}

/// Maximal windows `0 → X_1 → ... → X_m → 0`, as (first zero, last zero).
fn zero_windows(les: &LESInstance) -> Vec<(usize, usize)> {
    let n = les.len();
    let zeros: Vec<usize> = (0..n).filter(|&k| is_zero(&les.slots[k].state)).collect();
    let mut out = Vec::new();
    if les.cyclic {
        for (j, &a) in zeros.iter().enumerate() {
            let b = zeros[(j + 1) % zeros.len()];
            let len = (b + n - a) % n;
            if len >= 2 || (zeros.len() == 1 && n >= 3) {
                out.push((a, b));
            }
        }
    } else {
        for w in zeros.windows(2) {
            if w[1] - w[0] >= 2 {
                out.push((w[0], w[1]));
            }
        }
    }
    out
}

fn rule_windows(les: &mut LESInstance, log: &mut Vec<Deduction>) -> Result<bool> {
    let mut changed = false;
    for (a, b) in zero_windows(les) {
        let mut idx = window_indices(les, (a, b));
        if a == b {
            // single zero in a cyclic sequence: the window wraps fully
            idx = (0..les.len()).map(|j| (a + j) % les.len()).collect();
            idx.push(a);
        }
        let inner: Vec<usize> = idx[1..idx.len() - 1].to_vec();
        let unknown: Vec<usize> = inner.iter().copied().filter(|&k| les.slots[k].state == DimensionValue::Unknown).collect();
        let symbolic: Vec<usize> =
            inner.iter().copied().filter(|&k| matches!(les.slots[k].state, DimensionValue::Symbolic(_))).collect();
        if !symbolic.is_empty() {
            if inner.len() == 2 {
                let (x, y) = (inner[0], inner[1]);
                let (sx, sy) = (les.slots[x].state.clone(), les.slots[y].state.clone());
                match (&sx, &sy) {
                    (DimensionValue::Symbolic(_), DimensionValue::Unknown) => {
                        set_state(les, log, y, sx.clone(), Rule::R2, (a, b), "isomorphic to an infinite-dimensional neighbour");
                        changed = true;
                    }
                    (DimensionValue::Unknown, DimensionValue::Symbolic(_)) => {
                        set_state(les, log, x, sy.clone(), Rule::R2, (a, b), "isomorphic to an infinite-dimensional neighbour");
                        changed = true;
                    }
                    (DimensionValue::Symbolic(_), DimensionValue::Symbolic(_)) => {}
                    _ => return Err(inconsistent(les, (a, b), "finite space isomorphic to an infinite one")),
                }
            }
            continue;
        }
        let sum_known = |les: &LESInstance| -> i64 {
            inner
                .iter()
                .enumerate()
                .filter_map(|(j, &k)| les.slots[k].state.as_known().map(|d| if j % 2 == 0 { d as i64 } else { -(d as i64) }))
                .sum()
        };
        match unknown.len() {
            0 => {
                if sum_known(les) != 0 {
                    return Err(inconsistent(les, (a, b), "alternating sum is not zero"));
                }
            }
            1 => {
                let u = unknown[0];
                let j = inner.iter().position(|&k| k == u).unwrap();
                let s = sum_known(les);
                let v = if j % 2 == 0 { -s } else { s };
                if v < 0 {
                    return Err(inconsistent(les, (a, b), "solving the alternating sum gives a negative dimension"));
                }
                let rule = match inner.len() {
                    2 => Rule::R2,
                    3 => Rule::R3,
                    _ => Rule::R4,
                };
                set_state(les, log, u, DimensionValue::known(v as u64), rule, (a, b), "alternating sum over a zero-flanked window");
                changed = true;
            }
            _ => {}
        }
    }
    Ok(changed)
}

fn set_state(les: &mut LESInstance, log: &mut Vec<Deduction>, k: usize, v: DimensionValue, rule: Rule, window: (usize, usize), why: &str) {
    les.slots[k].state = v.clone();
    log.push(Deduction {
        rule,
        slot: Some(k),
        value: Some(v.clone()),
        window,
        message: format!("{} = {} ({why})", les.slots[k].label, v),
    });
}

fn rule_map_properties(les: &LESInstance, log: &mut Vec<Deduction>, seen: &mut BTreeSet<(usize, bool)>) {
    for k in 0..les.len() {
        if !is_zero(&les.slots[k].state) {
            continue;
        }
        // after a zero the next map is injective; before a zero the
        // previous map is surjective
        if let Some(a) = les.next(k) {
            if let Some(b) = les.next(a) {
                if les.nodes().iter().any(|(x, _, _)| *x == a) && !is_zero(&les.slots[a].state) && seen.insert((a, true)) {
                    log.push(Deduction {
                        rule: Rule::R5,
                        slot: None,
                        value: None,
                        window: (k, b),
                        message: format!("{} -> {} is injective", les.slots[a].label, les.slots[b].label),
                    });
                }
            }
        }
        if let Some(a) = les.prev(k) {
            if let Some(b) = les.prev(a) {
                if les.nodes().iter().any(|(x, _, _)| *x == a) && !is_zero(&les.slots[a].state) && seen.insert((b, false)) {
                    log.push(Deduction {
                        rule: Rule::R5,
                        slot: None,
                        value: None,
                        window: (b, k),
                        message: format!("{} -> {} is surjective", les.slots[b].label, les.slots[a].label),
                    });
                }
            }
        }
    }
}

/// Solve the linear system `dim X_k = rank(in) + rank(out)` over Q and
/// record every unknown dimension it pins down.
fn linear_pass(les: &mut LESInstance, log: &mut Vec<Deduction>) -> Result<bool> {
    let n = les.len();
    let nm = les.nmaps();
    // variables: ranks 0..nm, then unknown dims
    let unknown: Vec<usize> = (0..n).filter(|&k| les.slots[k].state == DimensionValue::Unknown).collect();
    let dim_var: BTreeMap<usize, usize> = unknown.iter().enumerate().map(|(j, &k)| (k, nm + j)).collect();
    let nv = nm + unknown.len();
    let symbolic = |k: usize| matches!(les.slots[k].state, DimensionValue::Symbolic(_));
    let tainted = |m: usize| !les.map_ranks.contains_key(&m) && (symbolic(m) || symbolic((m + 1) % n));
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for (m, r) in &les.map_ranks {
        let mut row = vec![Q::zero(); nv];
        row[*m] = Q::one();
        rows.push((row, Q::from_int(*r as i64)));
    }
    for m in 0..nm {
        if is_zero(&les.slots[m].state) || is_zero(&les.slots[(m + 1) % n].state) {
            let mut row = vec![Q::zero(); nv];
            row[m] = Q::one();
            rows.push((row, Q::zero()));
        }
    }
    for (k, mi, mo) in les.nodes() {
        if symbolic(k) || tainted(mi) || tainted(mo) {
            continue;
        }
        let mut row = vec![Q::zero(); nv];
        row[mi] += &Q::one();
        row[mo] += &Q::one();
        let rhs = match les.slots[k].state.as_known() {
            Some(d) => Q::from_int(d as i64),
            None => {
                row[dim_var[&k]] -= &Q::one();
                Q::zero()
            }
        };
        rows.push((row, rhs));
    }
    let uses_ranks = !les.map_ranks.is_empty();
    let (rref, pivots) = rref(rows, nv);
    for (row, rhs) in &rref {
        if row.iter().all(|c| c.is_zero()) && !rhs.is_zero() {
            return Err(inconsistent(les, (0, n - 1), "exactness relations have no solution"));
        }
    }
    if unknown.is_empty() && !feasible_ranks(les, &rref, &pivots, nm) {
        return Err(inconsistent(les, (0, n - 1), "no map ranks fit the dimensions"));
    }
    let mut changed = false;
    for (r, &pv) in pivots.iter().enumerate() {
        let (row, rhs) = &rref[r];
        if row.iter().enumerate().any(|(j, c)| j != pv && !c.is_zero()) {
            continue;
        }
        if !rhs.is_integer() || rhs.is_negative() {
            return Err(inconsistent(les, (0, n - 1), "forced value is negative or fractional"));
        }
        if pv < nm && !rank_fits(les, pv, rhs.to_i64().unwrap() as u64) {
            return Err(inconsistent(les, (0, n - 1), "forced map rank exceeds a dimension"));
        }
        if pv >= nm {
            let k = unknown[pv - nm];
            let v = rhs.to_i64().unwrap() as u64;
            let rule = if uses_ranks { Rule::R6 } else { Rule::R4 };
            set_state(les, log, k, DimensionValue::known(v), rule, (0, n - 1), "forced by the exactness relations");
            changed = true;
        }
    }
    Ok(changed)
}

fn rank_fits(les: &LESInstance, m: usize, r: u64) -> bool {
    [m, (m + 1) % les.len()].iter().all(|&k| les.slots[k].state.as_known().is_none_or(|d| r <= d))
}

/// With every dimension known, search the free ranks for a non-negative
/// integer solution that respects `rank <= dim`.
fn feasible_ranks(les: &LESInstance, rref: &[(Vec<Q>, Q)], pivots: &[usize], nm: usize) -> bool {
    let free: Vec<usize> = (0..nm).filter(|c| !pivots.contains(c)).collect();
    let bound = les.slots.iter().filter_map(|s| s.state.as_known()).max().unwrap_or(0);
    if free.len() > 4 || nm == 0 {
        return true;
    }
    let mut vals = vec![0u64; free.len()];
    loop {
        let mut ranks = vec![None; nm];
        for (j, &c) in free.iter().enumerate() {
            ranks[c] = Some(Q::from_int(vals[j] as i64));
        }
        for (r, &pv) in pivots.iter().enumerate() {
            let (row, rhs) = &rref[r];
            let mut v = rhs.clone();
            for (j, &c) in free.iter().enumerate() {
                v -= &(&row[c] * &Q::from_int(vals[j] as i64));
            }
            ranks[pv] = Some(v);
        }
        let ok = ranks.iter().enumerate().all(|(m, r)| {
            let r = r.as_ref().unwrap();
            r.is_integer() && !r.is_negative() && rank_fits(les, m, r.to_i64().unwrap() as u64)
        });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return false;
            }
            vals[i] += 1;
            if vals[i] <= bound {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
}

fn rref(mut rows: Vec<(Vec<Q>, Q)>, nv: usize) -> (Vec<(Vec<Q>, Q)>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nv {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r].0[c].inv();
        for x in rows[r].0.iter_mut() {
            *x = &*x * &inv;
        }
        rows[r].1 = &rows[r].1 * &inv;
        let (prow, prhs) = rows[r].clone();
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &(y * &f);
            }
            *rhs -= &(&prhs * &f);
        }
        pivots.push(c);
        r += 1;
    }
    // zero rows after the pivots still matter for consistency
    (rows, pivots)
}

/// Copy states across `shared` pairs `(slot in a, slot in b)` and re-solve
/// both sequences until they agree.
pub fn splice(a: &LESInstance, b: &LESInstance, shared: &[(usize, usize)]) -> Result<(Solution, Solution)> {
    let mut x = solve(a)?;
    let mut y = solve(b)?;
    loop {
        let mut changed = false;
        for &(i, j) in shared {
            let si = x.instance.slots[i].state.clone();
            let sj = y.instance.slots[j].state.clone();
            match (&si, &sj) {
                (DimensionValue::Unknown, DimensionValue::Unknown) => {}
                (DimensionValue::Unknown, _) => {
                    x.instance.slots[i].state = sj.clone();
                    x.log.push(shared_note(i, &sj, &y.instance.slots[j].label));
                    changed = true;
                }
                (_, DimensionValue::Unknown) => {
                    y.instance.slots[j].state = si.clone();
                    y.log.push(shared_note(j, &si, &x.instance.slots[i].label));
                    changed = true;
                }
                _ if si == sj => {}
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "shared slots {} and {} disagree: {} vs {}",
                        x.instance.slots[i].label, y.instance.slots[j].label, si, sj
                    )))
                }
            }
        }
        if !changed {
            return Ok((x, y));
        }
        let xs = solve(&x.instance)?;
        let ys = solve(&y.instance)?;
        x.instance = xs.instance;
        x.log.extend(xs.log);
        y.instance = ys.instance;
        y.log.extend(ys.log);
    }
}

fn shared_note(k: usize, v: &DimensionValue, from: &str) -> Deduction {
    Deduction { rule: Rule::R4, slot: Some(k), value: Some(v.clone()), window: (k, k), message: format!("copied from shared slot {from}") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DimensionValue::{Known, Unknown, Zero};

    fn solved(states: &[DimensionValue], cyclic: bool) -> Vec<DimensionValue> {
        solve(&LESInstance::from_states(states, cyclic)).unwrap().instance.states()
    }

    #[test]
    fn short_windows() {
        assert_eq!(solved(&[Zero, Unknown, Known(5), Zero], false)[1], Known(5));
        assert_eq!(solved(&[Zero, Unknown, Zero], false)[1], Zero);
        assert_eq!(solved(&[Zero, Unknown, Known(3), Known(1), Zero], false)[1], Known(2));
    }

    #[test]
    fn inconsistency_is_reported() {
        let e = solve(&LESInstance::from_states(&[Zero, Known(1), Known(3), Known(1), Zero], false));
        assert!(matches!(e, Err(Error::Inconsistent(_))));
        let e = solve(&LESInstance::from_states(&[Zero, Known(2), Zero], false));
        assert!(matches!(e, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn symbolic_only_in_short_windows() {
        let inf = DimensionValue::Symbolic("growing".into());
        let s = solved(&[Zero, inf.clone(), Unknown, Zero], false);
        assert_eq!(s[2], inf);
        let s = solved(&[Zero, inf.clone(), Unknown, Known(1), Zero], false);
        assert_eq!(s[2], Unknown);
    }

    #[test]
    fn supplied_ranks() {
        // the six-term shape with two unknowns
        let mut les = LESInstance::from_states(&[Unknown, Known(2), Known(2), Unknown, Zero, Zero], true);
        assert_eq!(solve(&les).unwrap().instance.states()[0], Unknown);
        les.map_ranks.insert(1, 1);
        let s = solve(&les).unwrap();
        assert_eq!(s.instance.states()[0], Known(1));
        assert_eq!(s.instance.states()[3], Known(1));
        assert!(s.log.iter().any(|d| d.rule == Rule::R6));
    }

    #[test]
    fn machine_round_trip() {
        let mut les = LESInstance::from_states(&[Zero, Unknown, Known(3), DimensionValue::Symbolic("w".into())], false);
        les.slots[1].note = "from somewhere".into();
        les.map_ranks.insert(2, 1);
        assert_eq!(LESInstance::from_machine(&les.to_machine()).unwrap(), les);
    }
}
