//! Admissible cover data: a degree-`d` ramified cover of a hyperbolic
//! orbifold that could carry a reduction of an isomonodromic system.
//!
//! Everything here is exact: orbifold areas are rationals in units of `2 pi`
//! and the search is a finite enumeration over branching profiles.

pub mod perm;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::ClassifyError;
use perm::{realizable, Perm};

/// Cone-point order; `Infinite` is a puncture (`1/inf = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn reciprocal(self) -> Rational64 {
        match self {
            Order::Finite(n) => Rational64::new(1, n as i64),
            Order::Infinite => Rational64::from_integer(0),
        }
    }

    pub fn divides(self, k: u32) -> bool {
        matches!(self, Order::Finite(n) if k.is_multiple_of(n))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u32(*n),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbifoldSignature {
    pub genus: u32,
    /// Sorted ascending, punctures last.
    pub orders: Vec<Order>,
}

impl OrbifoldSignature {
    pub fn new(genus: u32, mut orders: Vec<Order>) -> Self {
        orders.sort();
        OrbifoldSignature { genus, orders }
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(|o| o.to_string()).collect();
        write!(f, "({}; {})", self.genus, orders.join(","))
    }
}

/// Orbifold area divided by `2 pi`: `2g - 2 + sum (1 - 1/nu)`.
pub fn area(sig: &OrbifoldSignature) -> Rational64 {
    let base = Rational64::from_integer(2 * sig.genus as i64 - 2);
    sig.orders.iter().fold(base, |acc, o| acc + Rational64::from_integer(1) - o.reciprocal())
}

pub fn is_hyperbolic(sig: &OrbifoldSignature) -> bool {
    area(sig) > Rational64::from_integer(0)
}

/// Dimension of the deformation space, `3g - 3 + n`.
pub fn teich_dim(sig: &OrbifoldSignature) -> i64 {
    3 * sig.genus as i64 - 3 + sig.n() as i64
}

/// A base cone point with the ramification indices of the points above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchPoint {
    pub order: Order,
    /// Sorted descending, summing to the degree.
    pub profile: Vec<u32>,
}

impl BranchPoint {
    pub fn new(order: Order, mut profile: Vec<u32>) -> Self {
        profile.sort_unstable_by(|a, b| b.cmp(a));
        BranchPoint { order, profile }
    }

    /// Upstairs points that stay cone points or punctures: `nu = inf` or
    /// `nu` not dividing `k`.
    fn orbifold_count(&self) -> usize {
        self.profile.iter().filter(|&&k| !self.order.divides(k)).count()
    }

    /// Upstairs points of cone angle `2 pi m` with `m >= 2`.
    fn branch_count(&self) -> usize {
        self.profile
            .iter()
            .filter(|&&k| match self.order {
                Order::Finite(n) => k % n == 0 && k / n >= 2,
                Order::Infinite => false,
            })
            .count()
    }

    fn ramification(&self) -> u32 {
        self.profile.iter().map(|k| k - 1).sum()
    }

    /// Replaces `nu` by `inf` when no preimage resolves the cone point; the
    /// two are indistinguishable for the counts above.
    pub fn canonical(&self) -> BranchPoint {
        if self.profile.iter().any(|&k| self.order.divides(k)) {
            self.clone()
        } else {
            BranchPoint { order: Order::Infinite, profile: self.profile.clone() }
        }
    }
}

fn free_branch_count(profile: &[u32]) -> usize {
    profile.iter().filter(|&&k| k >= 2).count()
}

/// `(d, g, orders, g~, n~, b)`.
pub type CandidateKey = (u32, u32, Vec<Order>, u32, u32, u32);

/// Numeric data of a cover `X~ -> X` of a genus-`g` orbifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoverCandidate {
    pub degree: u32,
    pub base: OrbifoldSignature,
    pub cover_genus: u32,
    /// `n~`: cone points and punctures of the cover.
    pub cover_orbifold_count: u32,
    /// `b`: points of angle `2 pi m`, `m >= 2` (free ramification included).
    pub branch_count: u32,
    pub points: Vec<BranchPoint>,
    /// Ramification over regular points of the base.
    pub free_points: Vec<Vec<u32>>,
}

impl CoverCandidate {
    /// Fills in `g~` from Riemann-Hurwitz and the counts `n~`, `b`.
    pub fn from_profiles(
        degree: u32,
        base_genus: u32,
        points: Vec<BranchPoint>,
        free_points: Vec<Vec<u32>>,
    ) -> Result<Self, ClassifyError> {
        let mut points: Vec<BranchPoint> = points.into_iter().map(|p| BranchPoint::new(p.order, p.profile)).collect();
        points.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.profile.cmp(&b.profile)));
        let mut free_points: Vec<Vec<u32>> = free_points
            .into_iter()
            .map(|mut p| {
                p.sort_unstable_by(|a, b| b.cmp(a));
                p
            })
            .collect();
        free_points.sort();
        for p in points.iter().map(|p| &p.profile).chain(&free_points) {
            if p.iter().sum::<u32>() != degree || p.contains(&0) {
                return Err(ClassifyError::MalformedProfile(format!("{p:?} does not partition {degree}")));
            }
        }
        if let Some(p) = free_points.iter().find(|p| p.iter().all(|&k| k == 1)) {
            return Err(ClassifyError::MalformedProfile(format!("free point {p:?} is unramified")));
        }
        let ram: i64 = points.iter().map(|p| p.ramification() as i64).sum::<i64>()
            + free_points.iter().map(|p| p.iter().map(|&k| k as i64 - 1).sum::<i64>()).sum::<i64>();
        // 2g~ - 2 = d (2g - 2) + R
        let twice = degree as i64 * (2 * base_genus as i64 - 2) + ram + 2;
        if twice < 0 || twice % 2 != 0 {
            return Err(ClassifyError::MalformedProfile(format!(
                "Riemann-Hurwitz gives 2g~ = {twice}"
            )));
        }
        let cover_orbifold_count = points.iter().map(|p| p.orbifold_count()).sum::<usize>() as u32;
        let branch_count = (points.iter().map(|p| p.branch_count()).sum::<usize>()
            + free_points.iter().map(|p| free_branch_count(p)).sum::<usize>()) as u32;
        let base = OrbifoldSignature::new(base_genus, points.iter().map(|p| p.order).collect());
        Ok(CoverCandidate {
            degree,
            base,
            cover_genus: (twice / 2) as u32,
            cover_orbifold_count,
            branch_count,
            points,
            free_points,
        })
    }

    pub fn canonical(&self) -> CoverCandidate {
        CoverCandidate::from_profiles(
            self.degree,
            self.base.genus,
            self.points.iter().map(BranchPoint::canonical).collect(),
            self.free_points.clone(),
        )
        .expect("canonicalization keeps the profiles")
    }

    /// Upstairs area over `2 pi` with every point of angle `2 pi m`,
    /// `m >= 2`, counted as `-1`: an upper bound for the true area that is
    /// attained when those points are simple.
    pub fn cover_area_bound(&self) -> Rational64 {
        let one = Rational64::from_integer(1);
        let cone: Rational64 = self
            .points
            .iter()
            .flat_map(|p| p.profile.iter().filter(|&&k| !p.order.divides(k)).map(move |&k| one - p.order.reciprocal() * k as i64))
            .sum();
        Rational64::from_integer(2 * self.cover_genus as i64 - 2) + cone - self.branch_count as i64
    }

    pub fn key(&self) -> CandidateKey {
        (
            self.degree,
            self.base.genus,
            self.base.orders.clone(),
            self.cover_genus,
            self.cover_orbifold_count,
            self.branch_count,
        )
    }
}

/// Each constraint on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub degree_at_least_two: bool,
    pub hyperbolic_base: bool,
    /// `d * area(X) <= area bound of X~`.
    pub area_inequality: bool,
    /// `3g - 3 + n + b >= 3g~ - 3 + n~`.
    pub dimension_budget: bool,
    /// `0 < 3g - 3 + n <= 3g~ - 3 + n~`.
    pub dimension_sandwich: bool,
}

impl ConstraintReport {
    pub fn all(&self) -> bool {
        self.degree_at_least_two
            && self.hyperbolic_base
            && self.area_inequality
            && self.dimension_budget
            && self.dimension_sandwich
    }
}

pub fn check_candidate(c: &CoverCandidate) -> ConstraintReport {
    let base_dim = teich_dim(&c.base);
    let cover_dim = 3 * c.cover_genus as i64 - 3 + c.cover_orbifold_count as i64;
    ConstraintReport {
        degree_at_least_two: c.degree >= 2,
        hyperbolic_base: is_hyperbolic(&c.base),
        area_inequality: area(&c.base) * c.degree as i64 <= c.cover_area_bound(),
        dimension_budget: base_dim + c.branch_count as i64 >= cover_dim,
        dimension_sandwich: 0 < base_dim && base_dim <= cover_dim,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Quadratic,
    Quartic,
    Lame,
    Genus2,
    UncompleteTwicePuncturedTorus,
    UncompleteGenus2,
    Bielliptic1,
    /// Numerically admissible, but no permutation monodromy exists.
    EliminatedSigma4,
    /// Known construction over a base of area zero.
    Picard,
    /// Admissible data outside the known list.
    Unexpected,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Quadratic => "Quadratic",
            Label::Quartic => "Quartic",
            Label::Lame => "Lame",
            Label::Genus2 => "Genus2",
            Label::UncompleteTwicePuncturedTorus => "UncompleteTwicePuncturedTorus",
            Label::UncompleteGenus2 => "UncompleteGenus2",
            Label::Bielliptic1 => "Bielliptic1",
            Label::EliminatedSigma4 => "Eliminated-Sigma4",
            Label::Picard => "Picard",
            Label::Unexpected => "UNEXPECTED",
        }
    }

    pub fn is_admissible(self) -> bool {
        !matches!(self, Label::EliminatedSigma4 | Label::Picard)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn orders(finite: &[u32], punctures: usize) -> Vec<Order> {
    finite.iter().map(|&n| Order::Finite(n)).chain(std::iter::repeat_n(Order::Infinite, punctures)).collect()
}

/// The known admissible constructions, keyed by
/// `(d, g, orders, g~, n~, b)`.
pub fn known_constructions() -> Vec<(CandidateKey, Label)> {
    vec![
        ((2, 0, orders(&[2, 2], 2), 0, 4, 0), Label::Quadratic),
        ((4, 0, orders(&[2, 2, 2], 1), 0, 4, 0), Label::Quartic),
        ((2, 0, orders(&[2, 2, 2], 1), 1, 1, 0), Label::Lame),
        ((2, 0, orders(&[2; 6], 0), 2, 0, 0), Label::Genus2),
        ((2, 0, orders(&[2, 2, 2], 1), 1, 2, 1), Label::UncompleteTwicePuncturedTorus),
        ((2, 0, orders(&[2; 5], 0), 2, 0, 1), Label::UncompleteGenus2),
        ((2, 0, orders(&[2, 2, 2, 2], 1), 1, 2, 0), Label::Bielliptic1),
    ]
}

/// Pure function of the numeric data.
pub fn label(c: &CoverCandidate, realizable: bool) -> Label {
    let key = c.key();
    if !realizable {
        let sigma4 = (4, 0, orders(&[2, 2, 2, 3], 0), 1, 1, 0);
        return if key == sigma4 { Label::EliminatedSigma4 } else { Label::Unexpected };
    }
    known_constructions()
        .into_iter()
        .find(|(k, _)| *k == key)
        .map_or(Label::Unexpected, |(_, l)| l)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationEntry {
    pub candidate: CoverCandidate,
    pub label: Label,
    pub constraints: ConstraintReport,
    pub realizable: bool,
    /// Base area over `2 pi`, as `p/q`.
    pub base_area: String,
}

impl ClassificationEntry {
    fn new(candidate: CoverCandidate) -> Self {
        let profiles: Vec<Vec<u32>> = candidate
            .points
            .iter()
            .map(|p| p.profile.clone())
            .chain(candidate.free_points.iter().cloned())
            .collect();
        let realizable = realizable(candidate.degree as usize, candidate.base.genus, &profiles);
        ClassificationEntry {
            label: label(&candidate, realizable),
            constraints: check_candidate(&candidate),
            realizable,
            base_area: area(&candidate.base).to_string(),
            candidate,
        }
    }
}

/// Search space of [`enumerate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_degree: u32,
    pub max_base_genus: u32,
    pub finite_orders: Vec<u32>,
    pub max_points: usize,
    pub max_cover_genus: u32,
    /// Skip profiles where `nu` divides no `k` (they are equivalent to
    /// `nu = inf`) and orders above the degree.
    pub canonical_only: bool,
    /// Cut branches whose dimension budget can no longer recover. Sound
    /// whenever no point type increases the slack; this is checked per
    /// degree and the cut is skipped otherwise.
    pub prune_by_budget: bool,
}

impl SearchBounds {
    /// Base genus 0, `nu` in {2, 3, 4} (only `nu <= d`) or `inf`, `g~ <= 2`.
    pub fn pruned(max_degree: u32) -> Self {
        SearchBounds {
            max_degree,
            max_base_genus: 0,
            finite_orders: vec![2, 3, 4],
            max_points: 8,
            max_cover_genus: 2,
            canonical_only: true,
            prune_by_budget: true,
        }
    }

    /// Base genus up to 3, `nu` up to 12, up to 12 points, `g~ <= 4`, every
    /// profile.
    pub fn exhaustive(max_degree: u32) -> Self {
        SearchBounds {
            max_degree,
            max_base_genus: 3,
            finite_orders: (2..=12).collect(),
            max_points: 12,
            max_cover_genus: 4,
            canonical_only: false,
            prune_by_budget: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub bounds: SearchBounds,
    /// Candidates passing every numeric constraint, canonicalized and
    /// sorted by `(d, n, g~, n~)`.
    pub entries: Vec<ClassificationEntry>,
    /// Non-hyperbolic known constructions, outside the classification.
    pub informational: Vec<ClassificationEntry>,
}

impl Classification {
    pub fn admissible(&self) -> impl Iterator<Item = &ClassificationEntry> {
        self.entries.iter().filter(|e| e.label.is_admissible())
    }

    pub fn eliminated(&self) -> impl Iterator<Item = &ClassificationEntry> {
        self.entries.iter().filter(|e| !e.label.is_admissible())
    }
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in (1..=n.min(max)).rev() {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

/// Partitions of `n`, each descending.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut out);
    out
}

/// One kind of base point in the search, with its effect on the counts.
struct PointType {
    point: Option<BranchPoint>,
    free: Option<Vec<u32>>,
    ram: i64,
    /// Change of `n + b - n~`.
    surplus: i64,
}

struct Search<'a> {
    d: u32,
    g: u32,
    bounds: &'a SearchBounds,
    types: Vec<PointType>,
    max_ram: i64,
    prune: bool,
    found: &'a mut BTreeSet<CoverCandidate>,
}

impl Search<'_> {
    /// Twice `n + b - n~ - 3 g~ + 3 g`, the dimension budget slack.
    fn slack2(&self, ram: i64, surplus: i64) -> i64 {
        // 2 g~ = d (2g - 2) + R + 2
        let twice_gt = self.d as i64 * (2 * self.g as i64 - 2) + ram + 2;
        2 * surplus - 3 * twice_gt + 6 * self.g as i64
    }

    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, n: usize, ram: i64, surplus: i64) {
        if self.prune && self.slack2(ram, surplus) < 0 {
            return;
        }
        self.record(chosen);
        for j in start..self.types.len() {
            let t = &self.types[j];
            let is_point = t.point.is_some();
            if (is_point && n >= self.bounds.max_points) || ram + t.ram > self.max_ram {
                continue;
            }
            let (r, s) = (t.ram, t.surplus);
            chosen.push(j);
            self.dfs(j, chosen, n + is_point as usize, ram + r, surplus + s);
            chosen.pop();
        }
    }

    fn record(&mut self, chosen: &[usize]) {
        let points: Vec<BranchPoint> = chosen.iter().filter_map(|&i| self.types[i].point.clone()).collect();
        if points.is_empty() {
            return;
        }
        let free: Vec<Vec<u32>> = chosen.iter().filter_map(|&i| self.types[i].free.clone()).collect();
        let Ok(c) = CoverCandidate::from_profiles(self.d, self.g, points, free) else {
            return;
        };
        if c.cover_genus > self.bounds.max_cover_genus || !check_candidate(&c).all() {
            return;
        }
        self.found.insert(c.canonical());
    }
}

fn point_types(d: u32, bounds: &SearchBounds) -> Vec<PointType> {
    let parts = partitions_of(d);
    let mut orders: Vec<Order> = bounds
        .finite_orders
        .iter()
        .filter(|&&n| !bounds.canonical_only || n <= d)
        .map(|&n| Order::Finite(n))
        .collect();
    orders.push(Order::Infinite);
    let mut types = Vec::new();
    for &order in &orders {
        for p in &parts {
            let bp = BranchPoint::new(order, p.clone());
            if bounds.canonical_only && bp.canonical() != bp {
                continue;
            }
            types.push(PointType {
                ram: bp.ramification() as i64,
                surplus: 1 + bp.branch_count() as i64 - bp.orbifold_count() as i64,
                point: Some(bp),
                free: None,
            });
        }
    }
    for p in parts.iter().filter(|p| p.iter().any(|&k| k >= 2)) {
        types.push(PointType {
            ram: p.iter().map(|&k| k as i64 - 1).sum(),
            surplus: free_branch_count(p) as i64,
            point: None,
            free: Some(p.clone()),
        });
    }
    types
}

/// Every admissible candidate within the bounds.
pub fn enumerate_within(bounds: &SearchBounds) -> Classification {
    let mut found = BTreeSet::new();
    for d in 2..=bounds.max_degree {
        for g in 0..=bounds.max_base_genus {
            let types = point_types(d, bounds);
            // adding a point changes twice the budget slack by 2 surplus - 3 ram;
            // when that is never positive the slack only decreases along the search
            let prune = bounds.prune_by_budget && types.iter().all(|t| 2 * t.surplus - 3 * t.ram <= 0);
            let max_ram = 2 * bounds.max_cover_genus as i64 - 2 - d as i64 * (2 * g as i64 - 2);
            if max_ram < 0 {
                continue;
            }
            let mut search = Search { d, g, bounds, types, max_ram, prune, found: &mut found };
            search.dfs(0, &mut Vec::new(), 0, 0, 0);
        }
    }
    let mut entries: Vec<ClassificationEntry> = found.into_iter().map(ClassificationEntry::new).collect();
    entries.sort_by_key(|e| {
        let c = &e.candidate;
        (c.degree, c.base.n(), c.cover_genus, c.cover_orbifold_count, c.clone())
    });
    Classification { bounds: bounds.clone(), entries, informational: vec![picard()] }
}

/// `enumerate(dmax)`; `exhaustive` widens the search far beyond the
/// reductions used by the pruned search.
pub fn enumerate(max_degree: u32, exhaustive: bool) -> Classification {
    let bounds = if exhaustive { SearchBounds::exhaustive(max_degree) } else { SearchBounds::pruned(max_degree) };
    enumerate_within(&bounds)
}

/// The elliptic double cover of the (0; 2,2,2,2) orbifold, which has area
/// zero.
pub fn picard() -> ClassificationEntry {
    let c = CoverCandidate::from_profiles(2, 0, vec![BranchPoint::new(Order::Finite(2), vec![2]); 4], vec![])
        .expect("four simple branch points");
    let mut e = ClassificationEntry::new(c);
    e.label = Label::Picard;
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sigma4Row {
    pub factors: [String; 3],
    pub product: String,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sigma4Report {
    pub rows: Vec<Sigma4Row>,
    /// Every product has order 1 or 2, so no three-cycle is reachable.
    pub obstruction_confirmed: bool,
    pub verdict: String,
}

/// All ordered triples of double transpositions in S4 and the orders of
/// their products.
pub fn sigma4_obstruction() -> Sigma4Report {
    let doubles = [
        Perm::from_cycles(4, &[&[1, 2], &[3, 4]]),
        Perm::from_cycles(4, &[&[1, 3], &[2, 4]]),
        Perm::from_cycles(4, &[&[1, 4], &[2, 3]]),
    ];
    let mut rows = Vec::new();
    for x in &doubles {
        for y in &doubles {
            for z in &doubles {
                let p = x.then(y).then(z);
                rows.push(Sigma4Row {
                    factors: [x.cycle_string(), y.cycle_string(), z.cycle_string()],
                    product: p.cycle_string(),
                    order: p.order(),
                });
            }
        }
    }
    let confirmed = rows.iter().all(|r| r.order <= 2);
    Sigma4Report {
        rows,
        obstruction_confirmed: confirmed,
        verdict: if confirmed { "cover nonexistent" } else { "obstruction fails" }.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn areas_and_dimensions() {
        let picard = OrbifoldSignature::new(0, orders(&[2, 2, 2, 2], 0));
        assert_eq!(area(&picard), r(0, 1));
        assert!(!is_hyperbolic(&picard));
        let five = OrbifoldSignature::new(0, orders(&[2; 5], 0));
        assert_eq!(area(&five), r(1, 2));
        assert_eq!(area(&OrbifoldSignature::new(2, vec![])), r(2, 1));
        assert_eq!(teich_dim(&OrbifoldSignature::new(0, orders(&[2, 2], 2))), 1);
        assert_eq!(teich_dim(&five), 2);
        assert_eq!(teich_dim(&OrbifoldSignature::new(1, orders(&[], 2))), 2);
    }

    #[test]
    fn quadratic_candidate_passes() {
        let c = CoverCandidate::from_profiles(
            2,
            0,
            vec![
                BranchPoint::new(Order::Finite(2), vec![2]),
                BranchPoint::new(Order::Finite(2), vec![2]),
                BranchPoint::new(Order::Infinite, vec![1, 1]),
                BranchPoint::new(Order::Infinite, vec![1, 1]),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!((c.cover_genus, c.cover_orbifold_count, c.branch_count), (0, 4, 0));
        assert!(check_candidate(&c).all());
    }

    #[test]
    fn degree_three_on_four_points_fails() {
        let c = CoverCandidate::from_profiles(
            3,
            0,
            vec![
                BranchPoint::new(Order::Finite(2), vec![2, 1]),
                BranchPoint::new(Order::Finite(2), vec![2, 1]),
                BranchPoint::new(Order::Finite(3), vec![3]),
                BranchPoint::new(Order::Finite(3), vec![3]),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(c.cover_genus, 1);
        let report = check_candidate(&c);
        assert!(report.hyperbolic_base && !report.dimension_budget && !report.all());
    }

    #[test]
    fn degree_one_fails() {
        let c = CoverCandidate::from_profiles(1, 0, vec![BranchPoint::new(Order::Finite(2), vec![1]); 5], vec![]).unwrap();
        assert!(!check_candidate(&c).degree_at_least_two);
    }

    #[test]
    fn malformed_profiles() {
        assert!(CoverCandidate::from_profiles(2, 0, vec![BranchPoint::new(Order::Finite(2), vec![3])], vec![]).is_err());
        assert!(CoverCandidate::from_profiles(2, 0, vec![BranchPoint::new(Order::Finite(2), vec![2])], vec![]).is_err());
        assert!(CoverCandidate::from_profiles(2, 0, vec![], vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn area_equality_for_simple_branching() {
        for e in enumerate(4, false).entries {
            let c = &e.candidate;
            let lhs = area(&c.base) * c.degree as i64;
            assert!(lhs <= c.cover_area_bound());
            let simple = c.points.iter().all(|p| p.profile.iter().all(|&k| match p.order {
                Order::Finite(n) => k % n != 0 || k / n <= 2,
                Order::Infinite => true,
            })) && c.free_points.iter().all(|p| p.iter().all(|&k| k <= 2));
            if simple {
                assert_eq!(lhs, c.cover_area_bound(), "{c:?}");
            }
        }
    }

    #[test]
    fn degree_two_and_three_strata() {
        let two = enumerate(2, false);
        assert_eq!(two.admissible().count(), 6);
        let three = enumerate(3, false);
        assert!(three.entries.iter().all(|e| e.candidate.degree != 3));
    }

    #[test]
    fn budget_cut_loses_nothing() {
        let bounds = SearchBounds {
            max_degree: 3,
            max_base_genus: 1,
            finite_orders: (2..=4).collect(),
            max_points: 5,
            max_cover_genus: 3,
            canonical_only: false,
            prune_by_budget: true,
        };
        let cut = enumerate_within(&bounds);
        let full = enumerate_within(&SearchBounds { prune_by_budget: false, ..bounds });
        assert_eq!(cut.entries, full.entries);
    }

    #[test]
    fn sigma4_table() {
        let report = sigma4_obstruction();
        assert_eq!(report.rows.len(), 27);
        assert!(report.obstruction_confirmed);
        let first_two = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).then(&Perm::from_cycles(4, &[&[1, 3], &[2, 4]]));
        assert_eq!(first_two.cycle_string(), "(14)(23)");
    }

    #[test]
    fn labels_are_known() {
        let c = enumerate(4, false);
        assert!(c.entries.iter().all(|e| e.label != Label::Unexpected));
        assert_eq!(c.admissible().count(), 7);
        assert_eq!(c.eliminated().count(), 1);
    }
}
