//! Exhaustive backtracking search for all dual 3-nets realizing a given group
//! over `F_p`, up to projectivities.
//!
//! The labeling is fixed in advance: element `x` sits at position `x` of every
//! component and `α(a), β(b), γ(a·b)` must be collinear. The frame is fixed by
//! `α(e) = (1,0,0)`, `β(e) = (0,1,0)`, `γ(e) = (1,1,0)`, `α(g) = (0,0,1)` and
//! `β(g) = (1,v,1)` for the first generator `g`; the `p − 1` values of `v`
//! are the independent top-level branches. Results are merged through
//! [`canonical_representative`].

mod canonical;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use canonical::{canonical_map, canonical_representative};

use crate::geometry::{all_points, collinear, incident, join, meet, PrimeField, ProjLine, ProjPoint};
use crate::groups::{isomorphic, FiniteGroup};
use crate::nets::{identify_realized_group, verify_net, DualThreeNet, Labeling};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub p: u64,
    pub group: FiniteGroup,
    /// Elements placed right after the frame, first one defining it; the
    /// group's own generators when `None`.
    pub generators: Option<Vec<usize>>,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Force points at the meet of their constraint lines and check unplaced
    /// points ahead; when off, every candidate on a constraint line is tried.
    pub propagation: bool,
}

impl SearchConfig {
    pub fn new(p: u64, group: FiniteGroup) -> Self {
        SearchConfig {
            p,
            group,
            generators: None,
            node_budget: 10_000_000,
            time_budget: None,
            propagation: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidate placements tried.
    pub nodes: u64,
    /// Rejected placements, by cause.
    pub prunes: BTreeMap<String, u64>,
    /// Complete labeled realizations before merging.
    pub raw_solutions: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Canonical representatives, sorted, labeled by the searched group.
    pub nets: Vec<DualThreeNet>,
    pub stats: SearchStats,
    /// `true` when the search ran to completion within its budgets.
    pub exhausted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Prune {
    Used,
    Collinearity,
    ExtraIncidence,
    Forward,
}

impl Prune {
    fn name(self) -> &'static str {
        match self {
            Prune::Used => "point_used",
            Prune::Collinearity => "collinearity",
            Prune::ExtraIncidence => "extra_incidence",
            Prune::Forward => "forward_check",
        }
    }
}

/// Variables are `comp * n + element`.
struct Problem {
    f: PrimeField,
    n: usize,
    group: FiniteGroup,
    /// For each variable, the pairs completing a prescribed collinear triple.
    constraints: Vec<Vec<(usize, usize)>>,
    order: Vec<usize>,
    points: Vec<ProjPoint>,
    propagation: bool,
}

fn point_id(f: &PrimeField, pt: &ProjPoint) -> usize {
    let p = f.p() as usize;
    let [x, y, z] = pt.coords().map(|c| c as usize);
    if x == 1 {
        y * p + z
    } else if y == 1 {
        p * p + z
    } else {
        p * p + p
    }
}

impl Problem {
    fn new(f: PrimeField, group: FiniteGroup, generators: &[usize], propagation: bool) -> Self {
        let n = group.order();
        let mut constraints = vec![Vec::new(); 3 * n];
        for a in 0..n {
            for b in 0..n {
                let c = group.mul(a, b);
                let (va, vb, vc) = (a, n + b, 2 * n + c);
                constraints[va].push((vb, vc));
                constraints[vb].push((va, vc));
                constraints[vc].push((va, vb));
            }
        }
        let first = generators.first().copied().unwrap_or(0);
        let mut order = vec![0, n, 2 * n];
        if n > 1 {
            order.extend([first, n + first]);
        }
        let preferred: Vec<usize> = generators.iter().flat_map(|&g| [g, n + g]).collect();
        let mut placed = vec![false; 3 * n];
        for &v in &order {
            placed[v] = true;
        }
        // most constrained first; ties go to generators, then to the lowest index
        while order.len() < 3 * n {
            let next = (0..3 * n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let count = constraints[v].iter().filter(|(u, w)| placed[*u] && placed[*w]).count();
                    (count.min(2), preferred.contains(&v), std::cmp::Reverse(v))
                })
                .expect("unplaced variable");
            placed[next] = true;
            order.push(next);
        }
        Problem {
            points: all_points(&f).collect(),
            f,
            n,
            group,
            constraints,
            order,
            propagation,
        }
    }

    fn designed(&self, u: usize, v: usize, w: usize) -> bool {
        let mut t = [u, v, w];
        t.sort_unstable();
        let n = self.n;
        t[0] < n && (n..2 * n).contains(&t[1]) && t[2] >= 2 * n && self.group.mul(t[0], t[1] - n) == t[2] - 2 * n
    }
}

struct State<'a> {
    pb: &'a Problem,
    assigned: Vec<Option<ProjPoint>>,
    placed: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    prunes: [u64; 4],
    solutions: Vec<Vec<ProjPoint>>,
    shared_nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget: u64,
    deadline: Option<Instant>,
}

impl<'a> State<'a> {
    fn constraint_lines(&self, v: usize) -> Vec<ProjLine> {
        let f = &self.pb.f;
        let mut lines: Vec<ProjLine> = Vec::new();
        for &(u, w) in &self.pb.constraints[v] {
            if let (Some(a), Some(b)) = (self.assigned[u], self.assigned[w]) {
                if let Ok(l) = join(f, &a, &b) {
                    if !lines.contains(&l) {
                        lines.push(l);
                    }
                }
            }
        }
        lines
    }

    fn domain(&self, v: usize) -> Vec<ProjPoint> {
        let f = &self.pb.f;
        let lines = self.constraint_lines(v);
        match lines.len() {
            0 => self.pb.points.clone(),
            1 => lines[0].points(f),
            _ if !self.pb.propagation => lines[0].points(f),
            _ => match meet(f, &lines[0], &lines[1]) {
                Ok(q) if lines.iter().all(|l| incident(f, &q, l)) => vec![q],
                _ => Vec::new(),
            },
        }
    }

    fn check(&self, v: usize, pt: &ProjPoint) -> std::result::Result<(), Prune> {
        let f = &self.pb.f;
        let n = self.pb.n;
        if self.used[point_id(f, pt)] {
            return Err(Prune::Used);
        }
        for &(u, w) in &self.pb.constraints[v] {
            if let (Some(a), Some(b)) = (self.assigned[u], self.assigned[w]) {
                if !collinear(f, pt, &a, &b) {
                    return Err(Prune::Collinearity);
                }
            }
        }
        // no collinear triple beyond the prescribed ones, and no line through
        // points of two components meets one of them twice
        let comp = v / n;
        for &u in &self.placed {
            if u / n == comp {
                continue;
            }
            let a = self.assigned[u].expect("placed");
            let Ok(line) = join(f, pt, &a) else { return Err(Prune::Used) };
            for &w in &self.placed {
                if w == u {
                    continue;
                }
                let b = self.assigned[w].expect("placed");
                if incident(f, &b, &line) && (w / n == comp || w / n == u / n || !self.pb.designed(v, u, w)) {
                    return Err(Prune::ExtraIncidence);
                }
            }
        }
        Ok(())
    }

    /// Every unplaced variable constrained by two lines needs them to meet
    /// in a single unused point.
    fn forward_ok(&self) -> bool {
        let f = &self.pb.f;
        (0..3 * self.pb.n).filter(|&v| self.assigned[v].is_none()).all(|v| {
            let lines = self.constraint_lines(v);
            if lines.len() < 2 {
                return true;
            }
            match meet(f, &lines[0], &lines[1]) {
                Ok(q) => !self.used[point_id(f, &q)] && lines[2..].iter().all(|l| incident(f, &q, l)),
                Err(_) => false,
            }
        })
    }

    fn place(&mut self, v: usize, pt: ProjPoint) {
        self.used[point_id(&self.pb.f, &pt)] = true;
        self.assigned[v] = Some(pt);
        self.placed.push(v);
    }

    fn unplace(&mut self, v: usize) {
        let pt = self.assigned[v].take().expect("placed");
        self.used[point_id(&self.pb.f, &pt)] = false;
        self.placed.pop();
    }

    fn out_of_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let total = self.shared_nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let late = self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d);
        if total > self.budget || late {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.pb.order.len() {
            self.solutions.push(self.assigned.iter().map(|p| p.expect("complete")).collect());
            return;
        }
        let v = self.pb.order[depth];
        for pt in self.domain(v) {
            self.nodes += 1;
            if self.out_of_budget() {
                return;
            }
            if let Err(cause) = self.check(v, &pt) {
                self.prunes[cause as usize] += 1;
                continue;
            }
            self.place(v, pt);
            if self.pb.propagation && !self.forward_ok() {
                self.prunes[Prune::Forward as usize] += 1;
            } else {
                self.dfs(depth + 1);
            }
            self.unplace(v);
        }
    }
}

/// Frame points: `α(e), β(e), γ(e)` and, for `n > 1`, `α(g)` and `β(g) = (1,v,1)`.
fn frame(f: &PrimeField, n: usize, v: Option<u32>) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
        .map(|c| ProjPoint::from_elems(f, c).expect("nonzero"))
        .to_vec();
    if n > 1 {
        pts.push(ProjPoint::from_elems(f, [0, 0, 1]).expect("nonzero"));
        pts.push(ProjPoint::from_elems(f, [1, v.expect("branch value"), 1]).expect("nonzero"));
    }
    pts
}

/// Searches every realization of `config.group` over `F_p` and returns one
/// canonical representative per projective equivalence class.
pub fn search_realizations(config: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    let f = PrimeField::new(config.p)?;
    let n = config.group.order();
    if config.p as usize <= n {
        return Err(Error::FieldTooSmall { p: f.p(), n });
    }
    if config.node_budget == 0 || config.time_budget.is_some_and(|d| d.is_zero()) {
        return Err(Error::InvalidInput("budgets must be positive".into()));
    }
    let generators = match &config.generators {
        Some(g) if g.iter().any(|&x| x >= n || x == 0) => {
            return Err(Error::InvalidInput("generators must be non-identity elements of the group".into()))
        }
        Some(g) => g.clone(),
        None => config.group.generators(),
    };
    let pb = Problem::new(f, config.group.clone(), &generators, config.propagation);
    let shared_nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let deadline = config.time_budget.map(|d| start + d);
    let branches: Vec<Option<u32>> = if n > 1 { (1..f.p()).map(Some).collect() } else { vec![None] };

    let outcomes: Vec<(u64, [u64; 4], Vec<Vec<ProjPoint>>)> = branches
        .par_iter()
        .map(|&branch| {
            let mut st = State {
                pb: &pb,
                assigned: vec![None; 3 * n],
                placed: Vec::with_capacity(3 * n),
                used: vec![false; f.plane_size()],
                nodes: 0,
                prunes: [0; 4],
                solutions: Vec::new(),
                shared_nodes: &shared_nodes,
                stop: &stop,
                budget: config.node_budget,
                deadline,
            };
            let fixed = frame(&f, n, branch);
            for (depth, pt) in fixed.iter().enumerate() {
                let v = pb.order[depth];
                st.nodes += 1;
                if st.out_of_budget() {
                    return (st.nodes, st.prunes, st.solutions);
                }
                if let Err(cause) = st.check(v, pt) {
                    st.prunes[cause as usize] += 1;
                    return (st.nodes, st.prunes, st.solutions);
                }
                st.place(v, *pt);
            }
            if !pb.propagation || st.forward_ok() {
                st.dfs(fixed.len());
            } else {
                st.prunes[Prune::Forward as usize] += 1;
            }
            (st.nodes, st.prunes, st.solutions)
        })
        .collect();

    let exhausted = !stop.load(Ordering::Relaxed);
    let mut stats = SearchStats::default();
    let mut raw = Vec::new();
    for (nodes, prunes, sols) in outcomes {
        stats.nodes += nodes;
        for cause in [Prune::Used, Prune::Collinearity, Prune::ExtraIncidence, Prune::Forward] {
            *stats.prunes.entry(cause.name().to_string()).or_default() += prunes[cause as usize];
        }
        raw.extend(sols);
    }
    stats.raw_solutions = raw.len() as u64;

    let labeling = Labeling::identity(config.group.clone());
    let nets: Vec<DualThreeNet> = raw
        .into_par_iter()
        .map(|pts| {
            let comps = [0, 1, 2].map(|c| pts[c * n..(c + 1) * n].to_vec());
            let net = DualThreeNet::new(f, comps, Some(labeling.clone()))?;
            canonical_representative(&net)
        })
        .collect::<Result<_>>()?;
    let mut unique: BTreeMap<canonical::NetKey, DualThreeNet> = BTreeMap::new();
    for net in nets {
        unique.entry(canonical::net_key(&net)).or_insert(net);
    }
    let nets: Vec<DualThreeNet> = unique.into_values().collect();
    nets.par_iter().try_for_each(|net| independent_check(net, &config.group))?;
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(SearchResult { nets, stats, exhausted })
}

/// Re-verifies a found net through the net module alone.
fn independent_check(net: &DualThreeNet, group: &FiniteGroup) -> Result<()> {
    if !verify_net(net)?.is_net || !net.labeling_holds() {
        return Err(Error::Internal("search produced a configuration that is not a labeled net".into()));
    }
    match identify_realized_group(net)? {
        Some((g, _)) if isomorphic(&g, group).is_some() => Ok(()),
        _ => Err(Error::Internal("search produced a net realizing another group".into())),
    }
}
