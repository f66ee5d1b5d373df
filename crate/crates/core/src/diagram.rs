//! The 4-plat template diagram `D[c_1, ..., c_n]` for odd `n`, its crossing
//! data, and the Gordon–Litherland correction term
//! `μ = Σ_{τ(p) = II} η(p)`.
//!
//! The diagram is encoded through its white-region graph: one vertex per
//! white region (the unbounded one included), one edge per crossing joining
//! the two white regions that meet there. Odd twist boxes are chains of
//! edges `e^{i-1} - e^i_1 - ... - e^i_{|c_i|-1} - e^{i+1}` down a central
//! column (the unbounded region closes both ends); even boxes are bundles of
//! `|c_j|` parallel edges from `e^j` to the unbounded region, all drawn on
//! the same side of the column. A cyclic order of edge ends at every vertex
//! fixes the planar embedding, and the knot is the medial curve of this
//! plane graph.
//!
//! Orientation is obtained by walking the medial curve once. At a crossing
//! the two black corners each sit between one end of each strand; the
//! crossing is type II when both of those ends point into the crossing (or
//! both out of it), and type I otherwise.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::goeritz::{block_len, BasisLabel, GoeritzMatrix, WhiteRegionBasis};
use crate::numeric::{Int, Matrix};

/// Largest template (total crossings) that will be materialized.
pub const MAX_CROSSINGS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    /// Odd positions: white regions between consecutive crossings.
    Horizontal,
    /// Even positions: black regions between consecutive crossings.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistRegion {
    /// 1-based position in the continued fraction.
    pub position: usize,
    pub coefficient: Int,
    pub class: RegionClass,
}

impl TwistRegion {
    /// +1 for right-handed half-twists (`c > 0`), -1 for left-handed.
    pub fn handedness(&self) -> i32 {
        if self.coefficient.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Crossing sign η of every crossing in the box. Turning a box a
    /// quarter turn keeps its handedness but swaps which corners are white,
    /// so the two classes have opposite η for the same handedness.
    pub fn eta(&self) -> i32 {
        match self.class {
            RegionClass::Horizontal => -self.handedness(),
            RegionClass::Vertical => self.handedness(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingType {
    I,
    II,
}

impl fmt::Display for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingType::I => "I",
            CrossingType::II => "II",
        })
    }
}

/// Relative direction of the two strands running through a twist box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandRelation {
    Parallel,
    Antiparallel,
}

impl fmt::Display for StrandRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrandRelation::Parallel => "parallel",
            StrandRelation::Antiparallel => "antiparallel",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingInfo {
    /// 1-based position of the twist region.
    pub region: usize,
    /// 1-based index of the crossing inside its region.
    pub index: usize,
    pub eta: i32,
    pub tau: CrossingType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiteRegion {
    Unbounded,
    Bounded(BasisLabel),
}

/// Edge end: `(edge, end)` with `end` 0 or 1.
type Dart = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Edge {
    /// index into `regions`
    region: usize,
    index: usize,
    ends: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone)]
pub struct TemplateDiagram {
    cf: ContinuedFraction,
    regions: Vec<TwistRegion>,
    white: Vec<WhiteRegion>,
    edges: Vec<Edge>,
    /// Port directions, indexed by `edge * 4 + end * 2 + side` (side 0 faces
    /// the next dart counterclockwise, side 1 the previous).
    ports: Vec<Direction>,
    components: usize,
}

impl TemplateDiagram {
    /// Builds and orients `D[cf]`; rejects even-length input and links.
    pub fn build(cf: &ContinuedFraction) -> Result<Self> {
        let diagram = Self::build_unchecked(cf)?;
        if diagram.components != 1 {
            return Err(Error::NotAKnot { det: cf.determinant() });
        }
        Ok(diagram)
    }

    /// Builds the diagram whether or not it is a knot; orientation data is
    /// meaningful only for knots.
    pub fn build_unchecked(cf: &ContinuedFraction) -> Result<Self> {
        if !cf.has_odd_length() {
            return Err(Error::EvenLength { len: cf.len() });
        }
        let crossings: Int = cf.coefficients().iter().map(Signed::abs).sum();
        if crossings > Int::from(MAX_CROSSINGS) {
            return Err(Error::DiagramTooLarge { crossings, limit: MAX_CROSSINGS });
        }
        let basis = WhiteRegionBasis::with_limit(cf, MAX_CROSSINGS)?;
        let n = cf.len();

        let regions: Vec<TwistRegion> = cf
            .coefficients()
            .iter()
            .enumerate()
            .map(|(idx, c)| TwistRegion {
                position: idx + 1,
                coefficient: c.clone(),
                class: if idx % 2 == 0 { RegionClass::Horizontal } else { RegionClass::Vertical },
            })
            .collect();

        // vertex 0 is the unbounded region, vertex b + 1 is basis element b
        let mut white = vec![WhiteRegion::Unbounded];
        white.extend(basis.labels().iter().map(|&l| WhiteRegion::Bounded(l)));
        let vertex = |label: Option<usize>| label.map_or(0, |b| b + 1);

        let mut edges = Vec::new();
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); white.len()];
        // darts at the top and bottom of each odd chain, and the bundle darts
        let mut chain_top: Vec<Dart> = Vec::new();
        let mut chain_bottom: Vec<Dart> = Vec::new();

        for position in (1..=n).step_by(2) {
            let region = position - 1;
            let m = block_len(&regions[region].coefficient);
            let mut nodes = Vec::with_capacity(m + 2);
            nodes.push(vertex((position > 1).then(|| basis.even(position - 1))));
            nodes.extend((1..=m).map(|k| vertex(Some(basis.odd(position, k)))));
            nodes.push(vertex((position < n).then(|| basis.even(position + 1))));
            for (k, pair) in nodes.windows(2).enumerate() {
                let e = edges.len();
                edges.push(Edge { region, index: k + 1, ends: [pair[0], pair[1]] });
                if k == 0 {
                    chain_top.push((e, 0));
                } else {
                    rotation[pair[0]].push((e, 0));
                }
                if k == m {
                    chain_bottom.push((e, 1));
                } else {
                    // interior chain vertex: up, then down
                    rotation[pair[1]].push((e, 1));
                }
            }
        }

        // Counterclockwise order at e^j: up, down, then the bundle from the
        // lowest edge to the highest. At the unbounded region (to the east of
        // everything): top of the column, each bundle from highest to lowest
        // in column order, bottom of the column.
        let mut outer: Vec<Dart> = vec![chain_top[0]];
        for position in (2..n).step_by(2) {
            let region = position - 1;
            let v = vertex(Some(basis.even(position)));
            let up = chain_bottom[position / 2 - 1];
            let down = chain_top[position / 2];
            let count = usize::try_from(regions[region].coefficient.abs()).expect("bounded");
            let mut bundle = Vec::with_capacity(count);
            for k in 1..=count {
                let e = edges.len();
                edges.push(Edge { region, index: k, ends: [v, 0] });
                bundle.push(e);
            }
            rotation[v] = vec![up, down];
            rotation[v].extend(bundle.iter().map(|&e| (e, 0)));
            outer.extend(bundle.iter().rev().map(|&e| (e, 1)));
        }
        outer.push(*chain_bottom.last().expect("at least one odd box"));
        rotation[0] = outer;

        let (ports, components) = orient(&edges, &rotation);
        Ok(TemplateDiagram { cf: cf.clone(), regions, white, edges, ports, components })
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn regions(&self) -> &[TwistRegion] {
        &self.regions
    }

    pub fn crossing_count(&self) -> usize {
        self.edges.len()
    }

    pub fn white_regions(&self) -> &[WhiteRegion] {
        &self.white
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// The two white regions meeting at each crossing, in region order.
    pub fn white_incidence(&self) -> impl Iterator<Item = (CrossingInfo, WhiteRegion, WhiteRegion)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(e, edge)| (self.crossing(e), self.white[edge.ends[0]], self.white[edge.ends[1]]))
    }

    fn port(&self, edge: usize, end: usize, side: usize) -> Direction {
        self.ports[edge * 4 + end * 2 + side]
    }

    fn tau(&self, edge: usize) -> CrossingType {
        // black corner between (end 0, side 0) and (end 1, side 1)
        if self.port(edge, 0, 0) == self.port(edge, 1, 1) {
            CrossingType::II
        } else {
            CrossingType::I
        }
    }

    fn crossing(&self, edge: usize) -> CrossingInfo {
        let e = &self.edges[edge];
        let region = &self.regions[e.region];
        CrossingInfo { region: region.position, index: e.index, eta: region.eta(), tau: self.tau(edge) }
    }

    /// Strand relation inside the box holding `edge`, measured along the box
    /// axis (along the chain for horizontal boxes, across the bundle for
    /// vertical ones).
    fn strands(&self, edge: usize) -> StrandRelation {
        let same = match self.regions[self.edges[edge].region].class {
            // both strands enter from the same chain end
            RegionClass::Horizontal => self.port(edge, 0, 0) == self.port(edge, 0, 1),
            // both strands enter from the same side of the bundle
            RegionClass::Vertical => self.port(edge, 0, 0) == self.port(edge, 1, 1),
        };
        if same {
            StrandRelation::Parallel
        } else {
            StrandRelation::Antiparallel
        }
    }

    pub fn classify_crossings(&self) -> Vec<CrossingInfo> {
        (0..self.edges.len()).map(|e| self.crossing(e)).collect()
    }

    /// Per-region (η, τ, strand relation), read off the first crossing of
    /// each box.
    pub fn region_summary(&self) -> Vec<RegionContribution> {
        self.regions
            .iter()
            .enumerate()
            .map(|(r, region)| {
                let edge = self.edges.iter().position(|e| e.region == r).expect("every box has a crossing");
                let tau = self.tau(edge);
                let contribution = match tau {
                    CrossingType::II => Int::from(region.eta()) * region.coefficient.abs(),
                    CrossingType::I => Int::from(0),
                };
                RegionContribution {
                    position: region.position,
                    coefficient: region.coefficient.clone(),
                    eta: region.eta(),
                    tau,
                    strands: self.strands(edge),
                    contribution,
                }
            })
            .collect()
    }

    /// `μ = Σ_{τ(p) = II} η(p)` summed over every crossing.
    pub fn mu_total(&self) -> Int {
        self.classify_crossings().iter().filter(|c| c.tau == CrossingType::II).map(|c| Int::from(c.eta)).sum()
    }

    /// Goeritz matrix recomputed from crossing signs: off-diagonal
    /// `g_ij = -Σ η(p)` over crossings joining `e_i` and `e_j`, diagonal
    /// `g_ii = -Σ_{k≠i} g_ik` with the unbounded region included in the sum
    /// and then dropped.
    pub fn goeritz_matrix(&self) -> Result<GoeritzMatrix> {
        let basis = WhiteRegionBasis::new(&self.cf)?;
        let size = basis.len();
        let mut g = Matrix::<Int>::zeros(size, size);
        for edge in &self.edges {
            let [a, b] = edge.ends;
            if a == b {
                continue;
            }
            let eta = Int::from(self.regions[edge.region].eta());
            for (u, v) in [(a, b), (b, a)] {
                if u == 0 {
                    continue;
                }
                let d = g.get(u - 1, u - 1) + &eta;
                g.set(u - 1, u - 1, d);
                if v != 0 {
                    let off = g.get(u - 1, v - 1) - &eta;
                    g.set(u - 1, v - 1, off);
                }
            }
        }
        Ok(GoeritzMatrix { basis, matrix: g })
    }
}

/// Walks the medial curve, recording port directions and counting
/// components.
fn orient(edges: &[Edge], rotation: &[Vec<Dart>]) -> (Vec<Direction>, usize) {
    let port_id = |(e, end): Dart, side: usize| e * 4 + end * 2 + side;
    // medial arcs: (d, side 0) <-> (next(d), side 1) around each vertex
    let mut arc = vec![usize::MAX; edges.len() * 4];
    for darts in rotation {
        for (i, &d) in darts.iter().enumerate() {
            let next = darts[(i + 1) % darts.len()];
            let a = port_id(d, 0);
            let b = port_id(next, 1);
            arc[a] = b;
            arc[b] = a;
        }
    }
    debug_assert!(arc.iter().all(|&a| a != usize::MAX));

    let mut ports: Vec<Option<Direction>> = vec![None; edges.len() * 4];
    let mut components = 0;
    for start in 0..ports.len() {
        if ports[start].is_some() {
            continue;
        }
        components += 1;
        let mut current = start;
        loop {
            ports[current] = Some(Direction::In);
            // straight through: same side, other end
            let exit = current ^ 2;
            ports[exit] = Some(Direction::Out);
            current = arc[exit];
            if current == start {
                break;
            }
        }
    }
    (ports.into_iter().map(|p| p.expect("all ports visited")).collect(), components)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionContribution {
    pub position: usize,
    pub coefficient: Int,
    pub eta: i32,
    pub tau: CrossingType,
    pub strands: StrandRelation,
    /// `|c_i| η_i` for type II boxes, 0 otherwise.
    pub contribution: Int,
}

/// A row of the closed-form tables for `n = 1, 3, 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub length: usize,
    /// 1-based row number within its table.
    pub row: usize,
    /// Whether the row matched the reversed continued fraction.
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuValue {
    pub total: Int,
    pub contributions: Vec<RegionContribution>,
    /// Closed-form table row used as a cross-check, when one applies.
    pub table: Option<TableRow>,
}

/// Parity rows (true = odd) and μ as coefficients of `c_1..c_n`.
const TABLE_1: &[(&[bool], &[i64])] = &[(&[true], &[0])];

const TABLE_3: &[(&[bool], &[i64])] =
    &[(&[true, true, true], &[-1, 1, -1]), (&[true, true, false], &[0, 0, -1]), (&[true, false, false], &[0, 0, 0])];

const TABLE_5: &[(&[bool], &[i64])] = &[
    (&[true, true, true, true, false], &[-1, 1, -1, 0, 0]),
    (&[true, true, true, false, true], &[0, 0, -1, 1, -1]),
    (&[true, true, true, false, false], &[-1, 1, -1, 0, -1]),
    (&[true, true, false, true, false], &[0, 0, -1, 0, 0]),
    (&[false, true, true, true, false], &[-1, 0, 0, 0, -1]),
    (&[true, true, false, false, true], &[-1, 1, -1, 1, -1]),
    (&[true, false, true, false, true], &[0, 0, 0, 0, 0]),
    (&[true, true, false, false, false], &[0, 0, -1, 0, -1]),
    (&[true, false, false, true, false], &[0, 0, 0, 0, -1]),
    (&[false, true, true, false, false], &[-1, 0, 0, 0, 0]),
    (&[true, false, false, false, false], &[0, 0, 0, 0, 0]),
    (&[false, false, true, false, false], &[0, 0, 0, 0, 0]),
];

pub fn table_for_length(n: usize) -> Option<&'static [(&'static [bool], &'static [i64])]> {
    match n {
        1 => Some(TABLE_1),
        3 => Some(TABLE_3),
        5 => Some(TABLE_5),
        _ => None,
    }
}

/// μ from the closed-form parity tables (`n = 1, 3, 5`), matching the
/// continued fraction or its reverse.
pub fn table_mu(cf: &ContinuedFraction) -> Option<(TableRow, Int)> {
    let table = table_for_length(cf.len())?;
    let parities: Vec<bool> = cf.coefficients().iter().map(Integer::is_odd).collect();
    for reversed in [false, true] {
        let coeffs: Vec<Int> =
            if reversed { cf.coefficients().iter().rev().cloned().collect() } else { cf.coefficients().to_vec() };
        let pattern: Vec<bool> = if reversed { parities.iter().rev().copied().collect() } else { parities.clone() };
        for (row, (rowpat, weights)) in table.iter().enumerate() {
            if *rowpat == pattern.as_slice() {
                let mu = coeffs.iter().zip(weights.iter()).map(|(c, &w)| c * w).sum();
                return Some((TableRow { length: cf.len(), row: row + 1, reversed }, mu));
            }
        }
    }
    None
}

/// Continued fraction with each `c_i` replaced by `±1` (odd) or `±2`
/// (even). Its template has the same strand connectivity box by box, so the
/// same η and τ per region.
pub fn parity_skeleton(cf: &ContinuedFraction) -> ContinuedFraction {
    let coeffs = cf
        .coefficients()
        .iter()
        .map(|c| {
            let size = if c.is_odd() { 1 } else { 2 };
            if c.is_positive() {
                Int::from(size)
            } else {
                Int::from(-size)
            }
        })
        .collect();
    ContinuedFraction::new(coeffs).expect("nonzero")
}

/// Correction term of the oriented template `D[cf]` (odd length, knot).
///
/// The per-region classification is taken from the parity skeleton, so
/// coefficients of any size are fine. When a closed-form table row applies,
/// it must agree.
pub fn mu(cf: &ContinuedFraction) -> Result<MuValue> {
    if !cf.has_odd_length() {
        return Err(Error::EvenLength { len: cf.len() });
    }
    if !cf.is_knot() {
        return Err(Error::NotAKnot { det: cf.determinant() });
    }
    let skeleton = TemplateDiagram::build(&parity_skeleton(cf))?;
    let contributions: Vec<RegionContribution> = skeleton
        .region_summary()
        .into_iter()
        .zip(cf.coefficients())
        .map(|(mut r, c)| {
            r.coefficient = c.clone();
            if r.tau == CrossingType::II {
                r.contribution = Int::from(r.eta) * c.abs();
            }
            r
        })
        .collect();
    let total: Int = contributions.iter().map(|r| &r.contribution).sum();

    let table = match table_mu(cf) {
        Some((row, expected)) if expected != total => {
            return Err(Error::CrossCheck(format!(
                "template correction term {total} disagrees with table row {} (n = {}, reversed = {}) value {expected}",
                row.row, row.length, row.reversed
            )));
        }
        Some((row, _)) => Some(row),
        None => None,
    };
    Ok(MuValue { total, contributions, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goeritz::goeritz_matrix;
    use crate::numeric::int;
    use proptest::prelude::*;

    fn cf(c: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64s(c).unwrap()
    }

    fn taus(d: &TemplateDiagram) -> Vec<CrossingType> {
        d.region_summary().iter().map(|r| r.tau).collect()
    }

    #[test]
    fn trefoil_template() {
        let d = TemplateDiagram::build(&cf(&[3])).unwrap();
        assert_eq!(d.regions().len(), 1);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.white_regions().len(), 3);
    }

    #[test]
    fn template_of_47_over_14() {
        let d = TemplateDiagram::build(&cf(&[3, -3, -5])).unwrap();
        assert_eq!(d.regions().len(), 3);
        assert_eq!(d.crossing_count(), 11);
        assert_eq!(d.component_count(), 1);
        // N + 1 white regions
        assert_eq!(d.white_regions().len(), 3 + 5);
        use CrossingType::*;
        assert_eq!(taus(&d), vec![II, II, II]);
        let contributions: Vec<Int> = d.region_summary().into_iter().map(|r| r.contribution).collect();
        // -c_1, +c_2, -c_3
        assert_eq!(contributions, vec![int(-3), int(-3), int(5)]);
        assert_eq!(d.mu_total(), int(-1));
    }

    #[test]
    fn template_of_11_over_3() {
        let d = TemplateDiagram::build(&cf(&[3, -2, -4, -1, -2])).unwrap();
        use CrossingType::*;
        assert_eq!(taus(&d), vec![I, I, I, I, II]);
        assert_eq!(d.mu_total(), int(2));
    }

    #[test]
    fn even_expansion_has_no_type_two() {
        let d = TemplateDiagram::build(&cf(&[3, -2, -2, -4, -4])).unwrap();
        assert!(d.classify_crossings().iter().all(|c| c.tau == CrossingType::I));
        let d = TemplateDiagram::build(&cf(&[3, -2, -4, -2, -2])).unwrap();
        assert_eq!(d.mu_total(), int(0));
    }

    #[test]
    fn links_are_rejected() {
        assert!(matches!(TemplateDiagram::build(&cf(&[2])), Err(Error::NotAKnot { .. })));
        assert_eq!(TemplateDiagram::build_unchecked(&cf(&[2])).unwrap().component_count(), 2);
        assert!(matches!(mu(&cf(&[2])), Err(Error::NotAKnot { .. })));
        assert!(matches!(TemplateDiagram::build(&cf(&[3, 1])), Err(Error::EvenLength { .. })));
    }

    #[test]
    fn mu_examples() {
        let m = mu(&cf(&[3, -3, -5])).unwrap();
        assert_eq!(m.total, int(-1));
        assert_eq!(m.table, Some(TableRow { length: 3, row: 1, reversed: false }));

        let m = mu(&cf(&[3, -2, -4, -1, -2])).unwrap();
        assert_eq!(m.total, int(2));
        assert_eq!(m.table, Some(TableRow { length: 5, row: 9, reversed: false }));

        let m = mu(&cf(&[2, -3, 3])).unwrap();
        assert_eq!(m.total, int(-2));
        assert_eq!(m.table, Some(TableRow { length: 3, row: 2, reversed: true }));
    }

    #[test]
    fn goeritz_from_crossings() {
        let d = TemplateDiagram::build(&cf(&[3])).unwrap();
        assert_eq!(d.goeritz_matrix().unwrap().matrix, goeritz_matrix(&cf(&[3])).unwrap().matrix);
        let c = cf(&[2, -3, 3]);
        let d = TemplateDiagram::build(&c).unwrap();
        assert_eq!(d.goeritz_matrix().unwrap(), goeritz_matrix(&c).unwrap());
        let d = TemplateDiagram::build(&cf(&[1])).unwrap();
        assert_eq!(d.goeritz_matrix().unwrap().size(), 0);
    }

    #[test]
    fn incidence_covers_both_ends() {
        let d = TemplateDiagram::build(&cf(&[2, -3, 3])).unwrap();
        let e2 = WhiteRegion::Bounded(BasisLabel::Even { position: 2 });
        let touching_e2 = d.white_incidence().filter(|(_, a, b)| *a == e2 || *b == e2).count();
        // |c_1| chain end + |c_2| bundle + c_3 chain start
        assert_eq!(touching_e2, 1 + 3 + 1);
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        prop_oneof![-7i64..=-1, 1i64..=7]
    }

    fn odd_cf() -> impl Strategy<Value = ContinuedFraction> {
        prop_oneof![Just(1usize), Just(3), Just(5), Just(7), Just(9)]
            .prop_flat_map(|n| prop::collection::vec(nonzero(), n))
            .prop_map(|c| cf(&c))
    }

    proptest! {
        #[test]
        fn components_follow_determinant_parity(c in odd_cf()) {
            let d = TemplateDiagram::build_unchecked(&c).unwrap();
            prop_assert_eq!(d.component_count() == 1, c.is_knot());
            prop_assert!(d.component_count() <= 2);
        }

        #[test]
        fn per_region_constancy_and_skeleton(c in odd_cf()) {
            prop_assume!(c.is_knot());
            let d = TemplateDiagram::build(&c).unwrap();
            let crossings = d.classify_crossings();
            for region in d.regions() {
                let here: Vec<_> = crossings.iter().filter(|x| x.region == region.position).collect();
                prop_assert_eq!(here.len(), usize::try_from(region.coefficient.abs()).unwrap());
                prop_assert!(here.iter().all(|x| x.eta == here[0].eta && x.tau == here[0].tau));
            }
            let skeleton = TemplateDiagram::build(&parity_skeleton(&c)).unwrap();
            prop_assert_eq!(taus(&d), taus(&skeleton));
            prop_assert_eq!(mu(&c).unwrap().total, d.mu_total());
        }

        #[test]
        fn eta_reproduces_goeritz(c in odd_cf()) {
            let d = TemplateDiagram::build_unchecked(&c).unwrap();
            prop_assert_eq!(d.goeritz_matrix().unwrap(), goeritz_matrix(&c).unwrap());
            for r in d.regions() {
                let expect = if r.position % 2 == 1 { -r.handedness() } else { r.handedness() };
                prop_assert_eq!(r.eta(), expect);
            }
        }

        #[test]
        fn type_two_matches_strand_relation(c in odd_cf()) {
            prop_assume!(c.is_knot());
            let d = TemplateDiagram::build(&c).unwrap();
            for r in d.region_summary() {
                let expect = match (r.position % 2 == 1, r.strands) {
                    (true, StrandRelation::Antiparallel) | (false, StrandRelation::Parallel) => CrossingType::II,
                    _ => CrossingType::I,
                };
                prop_assert_eq!(r.tau, expect);
            }
        }
    }
}
