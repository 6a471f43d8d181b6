//! Realizability of three-point branched covers of the projective line by
//! permutation monodromy: `σ0` over 1728, `σ1` over 0 and their product over
//! ∞.
//!
//! Products compose left to right: `p.then(q)` maps `x` to `q(p(x))`, and the
//! monodromy over ∞ is `σ0.then(σ1)`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Serialize, Serializer};

/// Default largest degree accepted by [`search`].
pub const DEFAULT_MAX_DEGREE: usize = 16;

/// Largest class that [`search`] will enumerate.
pub const MAX_CANDIDATES: u128 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("invalid partition '{0}': expected comma-separated positive integers")]
    InvalidPartition(String),
    #[error("partition {partition} sums to {sum}, not to the degree {degree}")]
    DegreeMismatch {
        partition: String,
        sum: usize,
        degree: usize,
    },
    #[error("degree {degree} exceeds the bound {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("Riemann-Hurwitz gives 2 - 2g = {0}, which is odd")]
    OddEuler(i64),
    #[error("class of type {0} has {1} elements, more than the search limit")]
    TooManyCandidates(String, u128),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("degree {0} is not divisible by 6")]
    NotDivisibleBySix(usize),
}

/// A permutation of `{0, …, n-1}`, printed 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// One-line notation, 0-based.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, MonodromyError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(MonodromyError::InvalidPerm(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Perm { images })
    }

    /// Disjoint or not, the cycles are applied left to right; points are
    /// 1-based.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm, MonodromyError> {
        let mut p = Perm::identity(n);
        for cycle in cycles {
            let mut seen = Vec::new();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(MonodromyError::InvalidPerm(format!(
                        "point {x} outside 1..={n}"
                    )));
                }
                if seen.contains(&x) {
                    return Err(MonodromyError::InvalidPerm(format!(
                        "point {x} repeated in a cycle"
                    )));
                }
                seen.push(x);
            }
            let mut c = Perm::identity(n);
            for (k, &x) in cycle.iter().enumerate() {
                c.images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            p = p.then(&c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` first, then `q`.
    pub fn then(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degrees differ");
        Perm {
            images: self.images.iter().map(|&x| q.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// `g⁻¹ self g`, relabelling every point `x` as `g(x)`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    /// Cycles with their smallest point first, ordered by that point,
    /// including fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            any = true;
            let body: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` or `()` in degree `n`.
/// Cycles compose left to right.
pub fn parse_perm(text: &str, n: usize) -> Result<Perm, MonodromyError> {
    let bad = |msg: &str| MonodromyError::InvalidPerm(format!("{msg} in '{text}'"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad("expected '('"));
        };
        let Some(close) = body.find(')') else {
            return Err(bad("missing ')'"));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(bad("nested '('"));
        }
        let mut cycle = Vec::new();
        for tok in inner.split_whitespace() {
            if !tok.bytes().all(|b| b.is_ascii_digit()) || tok.len() > 6 {
                return Err(bad("expected a point number"));
            }
            cycle.push(tok.parse::<usize>().map_err(|_| bad("expected a point number"))?);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Perm::from_cycles(n, &cycles)
}

/// A partition, stored in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> CycleType {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// `k` parts all equal to `part`.
    pub fn uniform(part: usize, k: usize) -> CycleType {
        CycleType::new(vec![part; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of permutations of this cycle type in the symmetric group.
    pub fn class_size(&self) -> u128 {
        let n = self.degree();
        let mut size: u128 = (1..=n as u128).product();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mult = self.parts[i..].iter().take_while(|&&q| q == p).count();
            size /= (p as u128).pow(mult as u32);
            size /= (1..=mult as u128).product::<u128>();
            i += mult;
        }
        size
    }

    /// `Σ (p - 1)` over the parts.
    pub fn ramification(&self) -> usize {
        self.degree() - self.parts.len()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for CycleType {
    type Err = MonodromyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cycle_type(s)
    }
}

/// Parses comma-separated positive integers, e.g. `3,3,3,3`.
pub fn parse_cycle_type(text: &str) -> Result<CycleType, MonodromyError> {
    let bad = || MonodromyError::InvalidPartition(text.to_string());
    let mut parts = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let plain = !tok.is_empty()
            && tok.len() <= 6
            && tok.bytes().all(|b| b.is_ascii_digit())
            && !tok.starts_with('0');
        if !plain {
            return Err(bad());
        }
        parts.push(tok.parse::<usize>().map_err(|_| bad())?);
    }
    Ok(CycleType::new(parts))
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Whether the group generated by `perms` acts transitively on `0..n`.
pub fn is_transitive(perms: &[Perm], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for p in perms {
        assert_eq!(p.degree(), n, "permutation degree differs from n");
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, p.apply(x)));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Genus of a connected cover of degree `degree` of the projective line
/// branched over three points with the given cycle types:
/// `2 - 2g = 2 degree - Σ (p - 1)`. Negative values mean no such cover.
pub fn genus_of_cover(degree: usize, types: [&CycleType; 3]) -> Result<i64, MonodromyError> {
    for t in types {
        check_degree(t, degree)?;
    }
    let euler = 2 * degree as i64 - types.iter().map(|t| t.ramification() as i64).sum::<i64>();
    if euler % 2 != 0 {
        return Err(MonodromyError::OddEuler(euler));
    }
    Ok((2 - euler) / 2)
}

fn check_degree(t: &CycleType, degree: usize) -> Result<(), MonodromyError> {
    if t.degree() != degree {
        return Err(MonodromyError::DegreeMismatch {
            partition: t.to_string(),
            sum: t.degree(),
            degree,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchProblem {
    pub degree: usize,
    pub over0: CycleType,
    pub over1728: CycleType,
    pub over_inf: CycleType,
}

impl SearchProblem {
    pub fn new(
        degree: usize,
        over0: CycleType,
        over1728: CycleType,
        over_inf: CycleType,
    ) -> Result<SearchProblem, MonodromyError> {
        if degree == 0 {
            return Err(MonodromyError::ZeroDegree);
        }
        for t in [&over0, &over1728, &over_inf] {
            check_degree(t, degree)?;
        }
        Ok(SearchProblem {
            degree,
            over0,
            over1728,
            over_inf,
        })
    }

    /// Three-cycles over 0, transpositions over 1728.
    pub fn j_map(degree: usize, over_inf: CycleType) -> Result<SearchProblem, MonodromyError> {
        if !degree.is_multiple_of(6) {
            return Err(MonodromyError::NotDivisibleBySix(degree));
        }
        SearchProblem::new(
            degree,
            CycleType::uniform(3, degree / 3),
            CycleType::uniform(2, degree / 2),
            over_inf,
        )
    }

    pub fn genus(&self) -> Result<i64, MonodromyError> {
        genus_of_cover(self.degree, [&self.over0, &self.over1728, &self.over_inf])
    }

    /// `σ1`: the canonical permutation of type `over0` whose cycles are
    /// consecutive blocks, longest first.
    pub fn canonical_sigma1(&self) -> Perm {
        let mut images = Vec::with_capacity(self.degree);
        let mut start = 0;
        for &p in self.over0.parts() {
            for k in 0..p {
                images.push(start + (k + 1) % p);
            }
            start += p;
        }
        Perm { images }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Monodromy over 1728.
    pub sigma0: Perm,
    /// Monodromy over 0.
    pub sigma1: Perm,
}

impl Witness {
    /// Monodromy over ∞ (up to inversion): `σ0` then `σ1`.
    pub fn product(&self) -> Perm {
        self.sigma0.then(&self.sigma1)
    }

    pub fn conjugate(&self, g: &Perm) -> Witness {
        Witness {
            sigma0: self.sigma0.conjugate(g),
            sigma1: self.sigma1.conjugate(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found(Witness),
    Nonexistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// `σ0` candidates examined in enumeration order up to and including
    /// the witness, or the whole class when there is none.
    pub scanned: u128,
    pub class_size: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    pub max_degree: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// Independent check of a witness: cycle types, product type and
/// transitivity by breadth-first orbit closure.
pub fn verify_witness(problem: &SearchProblem, w: &Witness) -> Result<(), String> {
    let n = problem.degree;
    if w.sigma0.degree() != n || w.sigma1.degree() != n {
        return Err("degree mismatch".into());
    }
    let ty = |p: &Perm| {
        let mut lens = Vec::new();
        let mut seen = vec![false; n];
        for s in 0..n {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p.images[x];
                len += 1;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    };
    if ty(&w.sigma0) != problem.over1728.parts() {
        return Err(format!("sigma0 has type {:?}, expected {}", ty(&w.sigma0), problem.over1728));
    }
    if ty(&w.sigma1) != problem.over0.parts() {
        return Err(format!("sigma1 has type {:?}, expected {}", ty(&w.sigma1), problem.over0));
    }
    let product: Vec<usize> = (0..n).map(|x| w.sigma1.images[w.sigma0.images[x]]).collect();
    let product = Perm { images: product };
    if ty(&product) != problem.over_inf.parts() {
        return Err(format!("product has type {:?}, expected {}", ty(&product), problem.over_inf));
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for y in [w.sigma0.images[x], w.sigma1.images[x]] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err("generated group is not transitive".into());
    }
    Ok(())
}

/// Enumerates the permutations of one cycle type. Each permutation is built
/// by repeatedly opening a cycle at the smallest unused point, choosing its
/// length (ascending) and then its remaining points in lexicographic order,
/// so every class element appears exactly once.
struct ClassEnumerator<'a> {
    n: usize,
    /// Remaining multiplicity of every cycle length.
    remaining: Vec<usize>,
    used: Vec<bool>,
    images: Vec<usize>,
    visit: &'a mut dyn FnMut(&[usize]) -> bool,
    scanned: u128,
}

impl ClassEnumerator<'_> {
    /// Returns `true` when the visitor asked to stop.
    fn run(&mut self) -> bool {
        let Some(start) = self.used.iter().position(|u| !u) else {
            self.scanned += 1;
            return (self.visit)(&self.images);
        };
        for len in 1..self.remaining.len() {
            if self.remaining[len] == 0 {
                continue;
            }
            self.remaining[len] -= 1;
            self.used[start] = true;
            let mut cycle = vec![start];
            if self.extend(&mut cycle, len) {
                return true;
            }
            self.used[start] = false;
            self.remaining[len] += 1;
        }
        false
    }

    fn extend(&mut self, cycle: &mut Vec<usize>, len: usize) -> bool {
        if cycle.len() == len {
            for k in 0..len {
                self.images[cycle[k]] = cycle[(k + 1) % len];
            }
            return self.run();
        }
        for x in 0..self.n {
            if self.used[x] {
                continue;
            }
            self.used[x] = true;
            cycle.push(x);
            let stop = self.extend(cycle, len);
            cycle.pop();
            self.used[x] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// The first-level choices of the enumeration: the cycle through point 0.
fn first_cycles(t: &CycleType) -> Vec<Vec<usize>> {
    let n = t.degree();
    let mut lens: Vec<usize> = t.parts().to_vec();
    lens.sort_unstable();
    lens.dedup();
    let mut out = Vec::new();
    for len in lens {
        let mut cycle = vec![0];
        fn go(n: usize, len: usize, cycle: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cycle.len() == len {
                out.push(cycle.clone());
                return;
            }
            for x in 1..n {
                if !cycle.contains(&x) {
                    cycle.push(x);
                    go(n, len, cycle, out);
                    cycle.pop();
                }
            }
        }
        go(n, len, &mut cycle, &mut out);
    }
    out
}

/// Runs the enumeration of `t` restricted to permutations whose cycle
/// through 0 is `first`, calling `visit` until it returns `true`.
fn enumerate_chunk(
    t: &CycleType,
    first: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> (bool, u128) {
    let n = t.degree();
    let max = t.parts().first().copied().unwrap_or(0);
    let mut remaining = vec![0; max + 1];
    for &p in t.parts() {
        remaining[p] += 1;
    }
    remaining[first.len()] -= 1;
    let mut used = vec![false; n];
    let mut images: Vec<usize> = (0..n).collect();
    for (k, &x) in first.iter().enumerate() {
        used[x] = true;
        images[x] = first[(k + 1) % first.len()];
    }
    let mut e = ClassEnumerator {
        n,
        remaining,
        used,
        images,
        visit,
        scanned: 0,
    };
    let stop = e.run();
    (stop, e.scanned)
}

/// Chunk index, candidates scanned in the chunk, witness.
type ChunkResult = (usize, u128, Option<Vec<usize>>);

/// Exhaustive search over the `σ0` class with `σ1` fixed to the canonical
/// representative. Simultaneous conjugation preserves all three conditions,
/// so a negative answer is a proof of nonexistence. The witness returned is
/// the first in enumeration order, for any number of workers.
pub fn search(problem: &SearchProblem, options: SearchOptions) -> Result<SearchReport, MonodromyError> {
    let n = problem.degree;
    if n > options.max_degree {
        return Err(MonodromyError::DegreeTooLarge {
            degree: n,
            max: options.max_degree,
        });
    }
    let class_size = problem.over1728.class_size();
    if class_size > MAX_CANDIDATES {
        return Err(MonodromyError::TooManyCandidates(
            problem.over1728.to_string(),
            class_size,
        ));
    }
    let sigma1 = problem.canonical_sigma1();
    let target = problem.over_inf.parts().to_vec();
    let chunks = first_cycles(&problem.over1728);

    let results: Mutex<Vec<ChunkResult>> = Mutex::new(Vec::new());
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let worker = || {
        let mut product = vec![0; n];
        let mut seen = vec![false; n];
        let mut lens = Vec::with_capacity(n);
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= chunks.len() {
                break;
            }
            if i > best.load(Ordering::Acquire) {
                continue;
            }
            let mut found = None;
            let mut visit = |s0: &[usize]| {
                for x in 0..n {
                    product[x] = sigma1.images[s0[x]];
                }
                if !matches_type(&product, &target, &mut seen, &mut lens) {
                    return false;
                }
                if !connected(s0, &sigma1.images) {
                    return false;
                }
                found = Some(s0.to_vec());
                true
            };
            let (_, scanned) = enumerate_chunk(&problem.over1728, &chunks[i], &mut visit);
            if found.is_some() {
                best.fetch_min(i, Ordering::AcqRel);
            }
            results.lock().expect("no poisoning").push((i, scanned, found));
        }
    };
    let workers = options.workers.max(1).min(chunks.len().max(1));
    if workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(worker);
            }
        });
    }

    let mut results = results.into_inner().expect("no poisoning");
    results.sort_by_key(|r| r.0);
    let mut scanned = 0;
    for (_, count, found) in results {
        scanned += count;
        if let Some(images) = found {
            let w = Witness {
                sigma0: Perm { images },
                sigma1,
            };
            debug_assert_eq!(verify_witness(problem, &w), Ok(()));
            return Ok(SearchReport {
                outcome: SearchOutcome::Found(w),
                scanned,
                class_size,
            });
        }
    }
    assert_eq!(scanned, class_size, "exhaustive scan must visit the whole class");
    Ok(SearchReport {
        outcome: SearchOutcome::Nonexistent,
        scanned,
        class_size,
    })
}

fn matches_type(p: &[usize], target: &[usize], seen: &mut [bool], lens: &mut Vec<usize>) -> bool {
    if p.len() != seen.len() {
        return false;
    }
    seen.fill(false);
    lens.clear();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lens.push(len);
        if lens.len() > target.len() {
            return false;
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens.as_slice() == target
}

fn connected(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [a[x], b[x]] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    pub over_inf: CycleType,
    /// Riemann–Hurwitz genus of the cover; `None` when the parity is wrong.
    pub genus: Option<i64>,
    pub outcome: SearchOutcome,
    pub scanned: u128,
}

impl SurveyEntry {
    pub fn realizable(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Found(_))
    }
}

/// Searches every partition of `degree` with at least two parts over ∞,
/// with three-cycles over 0 and transpositions over 1728.
pub fn survey(degree: usize, options: SearchOptions) -> Result<Vec<SurveyEntry>, MonodromyError> {
    if degree == 0 {
        return Err(MonodromyError::ZeroDegree);
    }
    if !degree.is_multiple_of(6) {
        return Err(MonodromyError::NotDivisibleBySix(degree));
    }
    if degree > options.max_degree {
        return Err(MonodromyError::DegreeTooLarge {
            degree,
            max: options.max_degree,
        });
    }
    let mut out = Vec::new();
    for over_inf in partitions(degree).into_iter().filter(|p| p.len() >= 2) {
        let problem = SearchProblem::j_map(degree, over_inf.clone())?;
        let genus = problem.genus().ok();
        let report = search(&problem, options)?;
        out.push(SurveyEntry {
            over_inf,
            genus,
            outcome: report.outcome,
            scanned: report.scanned,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        parse_cycle_type(s).unwrap()
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Perm::identity(4).cycle_type(), ct("1,1,1,1"));
        let p = parse_perm("(1 2 3)(4 5 6)(7 8 9)(10 11 12)", 12).unwrap();
        assert_eq!(p.cycle_type(), ct("3,3,3,3"));
    }

    #[test]
    fn perm_text_round_trip() {
        let p = parse_perm("(1 3)(2 4)(5 7)(8 10)(9 11)(6 12)", 12).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4)(5 7)(6 12)(8 10)(9 11)");
        assert_eq!(parse_perm(&p.to_string(), 12).unwrap(), p);
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(parse_perm("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(parse_perm("(1)(2 3)", 3).unwrap().to_string(), "(2 3)");
    }

    #[test]
    fn perm_parse_errors() {
        assert!(parse_perm("(1 2", 3).is_err());
        assert!(parse_perm("(1 4)", 3).is_err());
        assert!(parse_perm("(1 1)", 3).is_err());
        assert!(parse_perm("(0 1)", 3).is_err());
        assert!(parse_perm("1 2", 3).is_err());
        assert!(parse_perm("((1 2))", 3).is_err());
        assert!(parse_perm("(a)", 3).is_err());
    }

    #[test]
    fn product_is_left_to_right() {
        let a = parse_perm("(1 2)", 3).unwrap();
        let b = parse_perm("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn cycle_type_text() {
        assert_eq!(ct("1,11").to_string(), "11,1");
        assert_eq!(ct(&ct("3,3,3,3").to_string()), ct("3,3,3,3"));
        for bad in ["", "3,,3", "0,3", "03", "-1", "a", "3 3"] {
            assert!(parse_cycle_type(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn class_sizes() {
        assert_eq!(CycleType::uniform(2, 6).class_size(), 10395);
        assert_eq!(CycleType::uniform(3, 4).class_size(), 246400);
        assert_eq!(ct("2,2,1").class_size(), 15);
        assert_eq!(ct("1").class_size(), 1);
    }

    #[test]
    fn class_enumeration_matches_class_size() {
        for t in partitions(7) {
            let mut seen = std::collections::HashSet::new();
            let mut total = 0;
            for first in first_cycles(&t) {
                let mut visit = |p: &[usize]| {
                    let perm = Perm::from_images(p.to_vec()).unwrap();
                    assert_eq!(perm.cycle_type(), t);
                    assert!(seen.insert(perm));
                    false
                };
                total += enumerate_chunk(&t, &first, &mut visit).1;
            }
            assert_eq!(total, t.class_size(), "{t}");
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(12).len(), 77);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&[parse_perm("(1 2)", 2).unwrap()], 2));
        assert!(!is_transitive(&[parse_perm("(1 2)", 3).unwrap()], 3));
    }

    #[test]
    fn genus_examples() {
        let (a, b) = (CycleType::uniform(2, 6), CycleType::uniform(3, 4));
        assert_eq!(genus_of_cover(12, [&a, &b, &ct("11,1")]), Ok(1));
        assert_eq!(genus_of_cover(12, [&a, &b, &ct("7,5")]), Ok(1));
        assert_eq!(genus_of_cover(1, [&ct("1"), &ct("1"), &ct("1")]), Ok(0));
        assert!(genus_of_cover(12, [&a, &b, &ct("10,1,1")]).is_err());
        assert!(genus_of_cover(12, [&a, &b, &ct("7,4")]).is_err());
    }

    #[test]
    fn small_search() {
        let p = SearchProblem::j_map(6, ct("4,1,1")).unwrap();
        assert_eq!(p.genus(), Ok(0));
        let r = search(&p, SearchOptions::default()).unwrap();
        let SearchOutcome::Found(w) = r.outcome else {
            panic!("expected a witness")
        };
        assert_eq!(verify_witness(&p, &w), Ok(()));
        assert!(r.scanned <= r.class_size);

        let p = SearchProblem::j_map(6, ct("3,3")).unwrap();
        // 2 - 2g = 12 - 4 - 3 - 4 is odd
        assert!(p.genus().is_err());
        let r = search(&p, SearchOptions::default()).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Nonexistent);
        assert_eq!(r.scanned, 15);
    }

    #[test]
    fn search_limits() {
        let p = SearchProblem::j_map(18, CycleType::uniform(9, 2)).unwrap();
        assert!(matches!(
            search(&p, SearchOptions::default()),
            Err(MonodromyError::DegreeTooLarge { .. })
        ));
        assert!(SearchProblem::new(4, ct("3,1"), ct("2,2"), ct("3")).is_err());
        assert!(matches!(survey(8, SearchOptions::default()), Err(MonodromyError::NotDivisibleBySix(8))));
    }
}
