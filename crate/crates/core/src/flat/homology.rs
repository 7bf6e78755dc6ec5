//! First homology through the dual graph of the cell complex.
//!
//! Paths move between cell centres ([`CellPath`]), so they never meet a
//! vertex and their turning is read off the move sequence. The dual graph is
//! a deformation retract of the surface minus its vertices, hence its
//! fundamental cycles generate `H_1(S)`; an integer symplectic reduction of
//! their intersection matrix yields a symplectic basis.
//!
//! Intersections pair a dual cycle with a primal edge chain: shifting a dual
//! path by `(-1/2, -1/2)` puts it on the grid edges, where the dual cycle
//! crosses it transversally at edge midpoints.

use std::collections::VecDeque;

use serde::Serialize;

use super::GridSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    Right,
    Up,
    Left,
    Down,
}

impl Move {
    /// Direction as a multiple of a quarter turn.
    pub fn quarter(self) -> i64 {
        match self {
            Move::Right => 0,
            Move::Up => 1,
            Move::Left => 2,
            Move::Down => 3,
        }
    }

    pub fn reverse(self) -> Move {
        match self {
            Move::Right => Move::Left,
            Move::Left => Move::Right,
            Move::Up => Move::Down,
            Move::Down => Move::Up,
        }
    }

    fn step(self, s: &GridSurface, c: usize) -> usize {
        match self {
            Move::Right => s.right().apply(c),
            Move::Left => s.right_inv().apply(c),
            Move::Up => s.up().apply(c),
            Move::Down => s.up_inv().apply(c),
        }
    }
}

/// Path through cell centres.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CellPath {
    pub start: usize,
    pub moves: Vec<Move>,
}

impl CellPath {
    pub fn new(start: usize, moves: Vec<Move>) -> Self {
        CellPath { start, moves }
    }

    /// Cell occupied before each move, followed by the final cell.
    pub fn cells(&self, s: &GridSurface) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut c = self.start;
        out.push(c);
        for m in &self.moves {
            c = m.step(s, c);
            out.push(c);
        }
        out
    }

    pub fn end(&self, s: &GridSurface) -> usize {
        self.moves.iter().fold(self.start, |c, m| m.step(s, c))
    }

    pub fn is_closed(&self, s: &GridSurface) -> bool {
        self.end(s) == self.start
    }

    /// Holonomy in cell units: `(#right - #left, #up - #down)`.
    pub fn displacement(&self) -> (i64, i64) {
        self.moves.iter().fold((0, 0), |(x, y), m| match m {
            Move::Right => (x + 1, y),
            Move::Left => (x - 1, y),
            Move::Up => (x, y + 1),
            Move::Down => (x, y - 1),
        })
    }

    pub fn reversed(&self, s: &GridSurface) -> CellPath {
        CellPath { start: self.end(s), moves: self.moves.iter().rev().map(|m| m.reverse()).collect() }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, s: &GridSurface, other: &CellPath) -> CellPath {
        assert_eq!(self.end(s), other.start, "paths do not connect");
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        CellPath { start: self.start, moves }
    }

    /// Total turning of a closed path in quarter turns, including the turn
    /// from the last move back to the first. `None` if the path reverses.
    pub fn turning_quarters(&self) -> Option<i64> {
        let k = self.moves.len();
        let mut total = 0;
        for i in 0..k {
            let a = self.moves[i].quarter();
            let b = self.moves[(i + 1) % k].quarter();
            match (b - a).rem_euclid(4) {
                0 => {}
                1 => total += 1,
                3 => total -= 1,
                _ => return None,
            }
        }
        Some(total)
    }

    /// Winding index (turning divided by `2π`) of a closed path.
    pub fn winding(&self) -> Option<i64> {
        let t = self.turning_quarters()?;
        debug_assert_eq!(t % 4, 0, "closed path with fractional turning");
        Some(t / 4)
    }

    /// The same curve pushed onto the grid edges by `(-1/2, -1/2)`.
    pub fn to_edge_path(&self, s: &GridSurface) -> EdgePath {
        let mut c = self.start;
        let mut steps = Vec::with_capacity(self.moves.len());
        for m in &self.moves {
            let step = match m {
                Move::Right => EdgeStep { cell: c, dir: EdgeDir::E },
                Move::Left => EdgeStep { cell: s.right_inv().apply(c), dir: EdgeDir::W },
                Move::Up => EdgeStep { cell: c, dir: EdgeDir::N },
                Move::Down => EdgeStep { cell: s.up_inv().apply(c), dir: EdgeDir::S },
            };
            steps.push(step);
            c = m.step(s, c);
        }
        EdgePath { steps }
    }
}

/// Direction along a grid edge. `E`/`W` run along the bottom edge of `cell`,
/// `N`/`S` along its left edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeDir {
    E,
    N,
    W,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeStep {
    pub cell: usize,
    pub dir: EdgeDir,
}

/// Which way a path is rerouted around a vertex it runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Detour {
    /// Through the sector reached by turning counterclockwise from the
    /// outgoing direction to the incoming one.
    #[default]
    Left,
    Right,
}

/// Path along grid edges, from vertex to vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgePath {
    pub steps: Vec<EdgeStep>,
}

impl EdgeStep {
    /// Cells whose bottom-left corners are the start and end vertex.
    fn endpoints(&self, s: &GridSurface) -> (usize, usize) {
        let c = self.cell;
        match self.dir {
            EdgeDir::E => (c, s.right().apply(c)),
            EdgeDir::W => (s.right().apply(c), c),
            EdgeDir::N => (c, s.up().apply(c)),
            EdgeDir::S => (s.up().apply(c), c),
        }
    }
}

/// Index of each half-edge in the counterclockwise order at its vertex.
struct Slots {
    pos: Vec<usize>,
}

impl Slots {
    fn new(s: &GridSurface) -> Self {
        let mut pos = vec![0; s.n_cells()];
        for cyc in s.vertices() {
            for (j, &c) in cyc.iter().enumerate() {
                pos[c] = j;
            }
        }
        Slots { pos }
    }

    fn bottom_left_end(&self, x: usize) -> usize {
        4 * self.pos[x]
    }

    fn left_bottom_end(&self, x: usize) -> usize {
        4 * self.pos[x] + 1
    }

    fn bottom_right_end(&self, s: &GridSurface, x: usize) -> usize {
        4 * self.pos[s.right().apply(x)] + 2
    }

    fn left_top_end(&self, s: &GridSurface, x: usize) -> usize {
        // the quadrant after this half-edge is the cell above x
        let next = s.up().apply(x);
        let cyc_len = s.vertex_angle(s.vertex_of_cell(next));
        let j = (self.pos[next] + cyc_len - 1) % cyc_len;
        4 * j + 3
    }

    /// Half-edges (pointing away from the vertex) at the start and the end
    /// of a step.
    fn of_step(&self, s: &GridSurface, st: &EdgeStep) -> (usize, usize) {
        let x = st.cell;
        match st.dir {
            EdgeDir::E => (self.bottom_left_end(x), self.bottom_right_end(s, x)),
            EdgeDir::W => (self.bottom_right_end(s, x), self.bottom_left_end(x)),
            EdgeDir::N => (self.left_bottom_end(x), self.left_top_end(s, x)),
            EdgeDir::S => (self.left_top_end(s, x), self.left_bottom_end(x)),
        }
    }
}

impl EdgePath {
    pub fn is_connected(&self, s: &GridSurface) -> bool {
        self.steps.windows(2).all(|w| {
            let (_, a) = w[0].endpoints(s);
            let (b, _) = w[1].endpoints(s);
            s.vertex_of_cell(a) == s.vertex_of_cell(b)
        })
    }

    pub fn is_closed(&self, s: &GridSurface) -> bool {
        match (self.steps.first(), self.steps.last()) {
            (Some(f), Some(l)) => {
                self.is_connected(s) && s.vertex_of_cell(l.endpoints(s).1) == s.vertex_of_cell(f.endpoints(s).0)
            }
            _ => false,
        }
    }

    /// Total turning in quarter turns of a closed edge path, each vertex
    /// passed on the side given by `detour`.
    pub fn turning_quarters(&self, s: &GridSurface, detour: Detour) -> i64 {
        let slots = Slots::new(s);
        let k = self.steps.len();
        let mut total = 0i64;
        for i in 0..k {
            let (_, h_in) = slots.of_step(s, &self.steps[i]);
            let next = &self.steps[(i + 1) % k];
            let (h_out, _) = slots.of_step(s, next);
            let m = s.vertex_angle(s.vertex_of_cell(next.endpoints(s).0)) as i64;
            let delta = (h_in as i64 - h_out as i64).rem_euclid(4 * m);
            total += match detour {
                Detour::Left => 2 - delta,
                Detour::Right => 4 * m - 2 - delta,
            };
        }
        total
    }
}

/// Algebraic intersection number of two closed dual cycles.
pub fn intersection(s: &GridSurface, alpha: &CellPath, beta: &CellPath) -> i64 {
    let n = s.n_cells();
    // beta pushed onto the edges: coefficients on bottom and left edges
    let mut bottom = vec![0i64; n];
    let mut left = vec![0i64; n];
    let mut c = beta.start;
    for m in &beta.moves {
        match m {
            Move::Right => bottom[c] += 1,
            Move::Left => bottom[s.right_inv().apply(c)] -= 1,
            Move::Up => left[c] += 1,
            Move::Down => left[s.up_inv().apply(c)] -= 1,
        }
        c = m.step(s, c);
    }
    let mut total = 0;
    let mut c = alpha.start;
    for m in &alpha.moves {
        total += match m {
            Move::Right => left[s.right().apply(c)],
            Move::Left => -left[c],
            Move::Up => -bottom[s.up().apply(c)],
            Move::Down => bottom[c],
        };
        c = m.step(s, c);
    }
    total
}

/// Breadth-first spanning tree of the dual graph.
struct Tree {
    root: usize,
    /// move from the parent into the cell
    parent: Vec<Option<(usize, Move)>>,
    depth: Vec<usize>,
}

impl Tree {
    fn build(s: &GridSurface, root: usize, order: &[Move; 4]) -> Self {
        let n = s.n_cells();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(c) = q.pop_front() {
            for &m in order {
                let d = m.step(s, c);
                if depth[d] == usize::MAX {
                    depth[d] = depth[c] + 1;
                    parent[d] = Some((c, m));
                    q.push_back(d);
                }
            }
        }
        Tree { root, parent, depth }
    }

    /// Moves from `from` down the tree to its descendant `to`.
    fn path_down(&self, from: usize, to: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        let mut c = to;
        while c != from {
            let (p, m) = self.parent[c].expect("descendant");
            moves.push(m);
            c = p;
        }
        moves.reverse();
        moves
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap().0;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap().0;
        }
        while a != b {
            a = self.parent[a].unwrap().0;
            b = self.parent[b].unwrap().0;
        }
        a
    }
}

/// Simple closed dual cycles, one per non-tree edge of a breadth-first
/// spanning tree rooted at `root` that explores neighbours in `order`.
/// Each cycle starts at the lowest common ancestor of its edge.
pub fn fundamental_cycles(s: &GridSurface, root: usize, order: &[Move; 4]) -> Vec<CellPath> {
    let tree = Tree::build(s, root, order);
    let mut out = Vec::new();
    for c in 0..s.n_cells() {
        for m in [Move::Right, Move::Up] {
            let d = m.step(s, c);
            let is_tree_edge = tree.parent[d] == Some((c, m))
                || tree.parent[c] == Some((d, m.reverse()));
            if is_tree_edge {
                continue;
            }
            let top = tree.lca(c, d);
            let mut moves = tree.path_down(top, c);
            moves.push(m);
            let back: Vec<Move> = tree.path_down(top, d).iter().rev().map(|m| m.reverse()).collect();
            moves.extend(back);
            out.push(CellPath { start: top, moves });
        }
    }
    out
}

/// A symplectic basis `a_1, b_1, .., a_g, b_g` of `H_1(S)`.
///
/// Basis classes are integer combinations of simple dual cycles
/// (`generators`); `cycles` holds a closed path for each class.
#[derive(Debug, Clone, Serialize)]
pub struct SymplecticHomologyBasis {
    pub genus: usize,
    pub generators: Vec<CellPath>,
    /// Intersection matrix of the generators.
    pub generator_gram: Vec<Vec<i64>>,
    /// Row `2i` is `a_{i+1}`, row `2i+1` is `b_{i+1}`, over `generators`.
    pub coefficients: Vec<Vec<i64>>,
    pub cycles: Vec<CellPath>,
    root: usize,
    root_paths: Vec<CellPath>,
}

impl SymplecticHomologyBasis {
    pub fn a(&self, i: usize) -> &CellPath {
        &self.cycles[2 * i]
    }

    pub fn b(&self, i: usize) -> &CellPath {
        &self.cycles[2 * i + 1]
    }

    /// Pairing of two coefficient vectors through the generator matrix.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut t = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                t += xi * self.generator_gram[i][j] * yj;
            }
        }
        t
    }

    /// Intersection matrix of the basis classes.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let m = self.coefficients.len();
        (0..m)
            .map(|i| (0..m).map(|j| self.pair(&self.coefficients[i], &self.coefficients[j])).collect())
            .collect()
    }

    /// Holonomy (cell units) of a coefficient vector.
    pub fn displacement(&self, x: &[i64]) -> (i64, i64) {
        x.iter().zip(&self.generators).fold((0, 0), |(a, b), (&c, g)| {
            let (dx, dy) = g.displacement();
            (a + c * dx, b + c * dy)
        })
    }

    /// A closed path based at the tree root realising the combination `x`.
    pub fn path_of(&self, s: &GridSurface, x: &[i64]) -> CellPath {
        let mut path = CellPath::new(self.root, Vec::new());
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let lead = &self.root_paths[i];
            let lp = lead.concat(s, &self.generators[i]).concat(s, &lead.reversed(s));
            let piece = if c > 0 { lp } else { lp.reversed(s) };
            for _ in 0..c.unsigned_abs() {
                path = path.concat(s, &piece);
            }
        }
        path
    }
}

pub fn homology_symplectic_basis(s: &GridSurface) -> SymplecticHomologyBasis {
    homology_basis_from(s, 0, &[Move::Right, Move::Up, Move::Left, Move::Down])
}

/// Basis built from the spanning tree rooted at `root` with neighbour
/// order `order`; distinct choices give genuinely different bases.
pub fn homology_basis_from(s: &GridSurface, root: usize, order: &[Move; 4]) -> SymplecticHomologyBasis {
    let generators = fundamental_cycles(s, root, order);
    let tree = Tree::build(s, root, order);
    let m = generators.len();
    let gram: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| intersection(s, &generators[i], &generators[j])).collect())
        .collect();
    let coefficients = symplectic_reduce(&gram);
    let root_paths = generators
        .iter()
        .map(|g| CellPath::new(tree.root, tree.path_down(tree.root, g.start)))
        .collect();
    let mut basis = SymplecticHomologyBasis {
        genus: coefficients.len() / 2,
        generators,
        generator_gram: gram,
        coefficients,
        cycles: Vec::new(),
        root: tree.root,
        root_paths,
    };
    basis.cycles = basis.coefficients.iter().map(|x| basis.path_of(s, x)).collect();
    basis
}

/// Integer congruence reduction of a skew-symmetric matrix.
///
/// Returns coefficient rows `a_1, b_1, ..` whose pairings are standard; the
/// remaining directions (the radical) are dropped. Panics if the form is
/// not unimodular modulo its radical, which cannot happen for an
/// intersection form.
pub fn symplectic_reduce(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = gram.len();
    let mut g: Vec<Vec<i64>> = gram.to_vec();
    let mut vecs: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect();
    let mut alive = vec![true; m];
    let mut out = Vec::new();

    // v_k -= q v_j, updating the Gram matrix by congruence
    fn sub(g: &mut [Vec<i64>], vecs: &mut [Vec<i64>], k: usize, j: usize, q: i64) {
        if q == 0 {
            return;
        }
        let m = g.len();
        for t in 0..m {
            vecs[k][t] -= q * vecs[j][t];
        }
        for t in 0..m {
            g[k][t] -= q * g[j][t];
        }
        for t in 0..m {
            g[t][k] -= q * g[t][j];
        }
    }

    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..m {
            for j in 0..m {
                if alive[i] && alive[j] && g[i][j] > 0 && best.map_or(true, |(a, b)| g[i][j] < g[a][b]) {
                    best = Some((i, j));
                }
            }
        }
        let Some((mut i, mut j)) = best else { break };
        'restart: loop {
            for k in 0..m {
                if !alive[k] || k == i || k == j {
                    continue;
                }
                // clear g[i][k] with v_j, using g[i][j] > 0
                let q = g[i][k].div_euclid(g[i][j]);
                sub(&mut g, &mut vecs, k, j, q);
                if g[i][k] != 0 {
                    // 0 < g[i][k] < g[i][j]
                    j = k;
                    continue 'restart;
                }
                // clear g[j][k] with v_i, using g[j][i] = -g[i][j]
                let q = -g[j][k].div_euclid(g[i][j]);
                sub(&mut g, &mut vecs, k, i, q);
                if g[j][k] != 0 {
                    // 0 < g[j][k] < g[i][j]: pair (j, k) instead
                    i = j;
                    j = k;
                    continue 'restart;
                }
            }
            break;
        }
        assert_eq!(g[i][j], 1, "intersection form is not unimodular");
        alive[i] = false;
        alive[j] = false;
        out.push(vecs[i].clone());
        out.push(vecs[j].clone());
    }
    out
}
