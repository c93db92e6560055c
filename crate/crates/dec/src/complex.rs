//! Periodic cubical grid complexes.
//!
//! The mesh is a uniform grid of cubes with spacing `h` and periodic
//! identifications in all three directions, so every degree has a fixed cell
//! count: one vertex, three edges, three faces, and one volume per grid cell.
//! Cells are indexed axis-major: the edge along axis `a` anchored at vertex
//! `v` has index `a * cells + v`, and likewise for faces (indexed by their
//! normal axis). Vertices use the row-major rule `x + nx * (y + ny * z)`.
//!
//! Orientation conventions, fixed once and used by every operator:
//!
//! * an edge along axis `a` points from `v` to `v + ê_a`;
//! * a face with normal `a` is spanned by the cyclic pair `(b, c)` with
//!   `(a, b, c)` an even permutation of `(x, y, z)`, and its boundary is the
//!   counterclockwise circulation `+e_b(v) +e_c(v+ê_b) -e_b(v+ê_c) -e_c(v)`;
//! * a volume's boundary takes each face pair as `+face_a(v+ê_a) - face_a(v)`
//!   (outward flux with the face normals pointing along `+a`).

use crate::error::DecError;
use crate::incidence::IncidenceOperator;

/// Coordinate axis of the grid. Also names edge directions, face normals and
/// plane-wave polarizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Self::ALL[i]
    }

    /// The cyclic successor: x -> y -> z -> x.
    pub fn next(self) -> Axis {
        Self::from_index((self.index() + 1) % 3)
    }

    /// Sign of the permutation `(a, b, c)` of the three axes: `+1` for cyclic
    /// order, `-1` for anticyclic, `0` when two axes coincide.
    pub fn permutation_sign(a: Axis, b: Axis, c: Axis) -> i32 {
        if a == b || b == c || a == c {
            0
        } else if b == a.next() {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Grid extents in cells per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GridDims {
    pub nx: u32,
    pub ny: u32,
    pub nz: u32,
}

impl GridDims {
    pub fn new(nx: u32, ny: u32, nz: u32) -> Self {
        Self { nx, ny, nz }
    }

    pub fn extent(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.nx,
            Axis::Y => self.ny,
            Axis::Z => self.nz,
        }
    }

    /// Total number of grid cells (= vertices = volumes on the torus).
    pub fn cells(&self) -> usize {
        self.nx as usize * self.ny as usize * self.nz as usize
    }
}

/// A periodic cubical complex with its incidence operators and the diagonal
/// metric (Hodge) weights for 1- and 2-cochains.
#[derive(Debug, Clone)]
pub struct CubicalComplex {
    dims: GridDims,
    h: f64,
    d0: IncidenceOperator,
    d1: IncidenceOperator,
    d2: IncidenceOperator,
    d1_transpose: IncidenceOperator,
    hodge1: Vec<f64>,
    hodge2: Vec<f64>,
}

impl CubicalComplex {
    /// Builds the complex for `dims` cells of spacing `h`.
    ///
    /// Grids need at least four cells per axis (smaller tori alias their own
    /// periodic images) and a strictly positive spacing.
    pub fn new(dims: GridDims, h: f64) -> Result<Self, DecError> {
        for axis in Axis::ALL {
            if dims.extent(axis) < 4 {
                return Err(DecError::GridTooSmall {
                    axis,
                    extent: dims.extent(axis),
                });
            }
        }
        if h <= 0.0 || !h.is_finite() {
            return Err(DecError::NonpositiveSpacing { h });
        }

        let cells = dims.cells();
        let d0 = build_d0(dims);
        let d1 = build_d1(dims);
        let d2 = build_d2(dims);
        let d1_transpose = d1.transpose();
        // Midpoint-quadrature diagonal metric: a 1-cochain stores line
        // integrals over edges of length h, a 2-cochain stores fluxes through
        // faces of area h^2; pairing either with its metric dual divides out
        // one power of the cell measure per degree difference.
        let hodge1 = vec![h; 3 * cells];
        let hodge2 = vec![1.0 / h; 3 * cells];
        Ok(Self {
            dims,
            h,
            d0,
            d1,
            d2,
            d1_transpose,
            hodge1,
            hodge2,
        })
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.cells()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.dims.cells()
    }

    pub fn face_count(&self) -> usize {
        3 * self.dims.cells()
    }

    pub fn volume_count(&self) -> usize {
        self.dims.cells()
    }

    /// Gradient: 0-cochains on vertices to 1-cochains on edges.
    pub fn d0(&self) -> &IncidenceOperator {
        &self.d0
    }

    /// Curl: 1-cochains on edges to 2-cochains on faces.
    pub fn d1(&self) -> &IncidenceOperator {
        &self.d1
    }

    /// Divergence: 2-cochains on faces to 3-cochains on volumes.
    pub fn d2(&self) -> &IncidenceOperator {
        &self.d2
    }

    /// Transpose of [`d1`](Self::d1), used by the dual curl in the update of
    /// the electric cochain.
    pub fn d1_transpose(&self) -> &IncidenceOperator {
        &self.d1_transpose
    }

    /// Diagonal metric weights on edges (every entry is `h` on a uniform grid).
    pub fn hodge1(&self) -> &[f64] {
        &self.hodge1
    }

    /// Diagonal metric weights on faces (every entry is `1/h`).
    pub fn hodge2(&self) -> &[f64] {
        &self.hodge2
    }

    /// Index of the vertex at integer coordinates (periodic).
    pub fn vertex(&self, x: u32, y: u32, z: u32) -> usize {
        let nx = self.dims.nx;
        let ny = self.dims.ny;
        let nz = self.dims.nz;
        let (x, y, z) = (x % nx, y % ny, z % nz);
        (x + nx * (y + ny * z)) as usize
    }

    /// Integer coordinates of vertex `v`.
    pub fn vertex_coords(&self, v: usize) -> [u32; 3] {
        let nx = self.dims.nx as usize;
        let ny = self.dims.ny as usize;
        [
            (v % nx) as u32,
            ((v / nx) % ny) as u32,
            (v / (nx * ny)) as u32,
        ]
    }

    /// Index of the edge along `axis` anchored at vertex `v`.
    pub fn edge(&self, axis: Axis, v: usize) -> usize {
        axis.index() * self.dims.cells() + v
    }

    /// Index of the face with normal `axis` anchored at vertex `v`.
    pub fn face(&self, axis: Axis, v: usize) -> usize {
        axis.index() * self.dims.cells() + v
    }

    /// Splits an edge or face index into its axis and anchor vertex.
    pub fn split_index(&self, idx: usize) -> (Axis, usize) {
        let cells = self.dims.cells();
        (Axis::from_index(idx / cells), idx % cells)
    }

    /// Position of vertex `v` in physical coordinates.
    pub fn vertex_position(&self, v: usize) -> [f64; 3] {
        let [x, y, z] = self.vertex_coords(v);
        [
            f64::from(x) * self.h,
            f64::from(y) * self.h,
            f64::from(z) * self.h,
        ]
    }

    /// Midpoint of an edge (the quadrature node of the de Rham map).
    pub fn edge_midpoint(&self, axis: Axis, v: usize) -> [f64; 3] {
        let mut p = self.vertex_position(v);
        p[axis.index()] += 0.5 * self.h;
        p
    }

    /// Center of a face with the given normal axis.
    pub fn face_center(&self, normal: Axis, v: usize) -> [f64; 3] {
        let mut p = self.vertex_position(v);
        let b = normal.next();
        let c = b.next();
        p[b.index()] += 0.5 * self.h;
        p[c.index()] += 0.5 * self.h;
        p
    }

    /// Center of the volume anchored at vertex `v`.
    pub fn volume_center(&self, v: usize) -> [f64; 3] {
        let mut p = self.vertex_position(v);
        for q in p.iter_mut() {
            *q += 0.5 * self.h;
        }
        p
    }

    /// Neighbor of vertex `v` one step along `axis` (periodic).
    pub fn step_vertex(&self, v: usize, axis: Axis, steps: i64) -> usize {
        let [x, y, z] = self.vertex_coords(v);
        let wrap = |coord: u32, n: u32| -> u32 {
            let n = i64::from(n);
            (((i64::from(coord) + steps) % n + n) % n) as u32
        };
        match axis {
            Axis::X => self.vertex(wrap(x, self.dims.nx), y, z),
            Axis::Y => self.vertex(x, wrap(y, self.dims.ny), z),
            Axis::Z => self.vertex(x, y, wrap(z, self.dims.nz)),
        }
    }
}

fn for_each_vertex(dims: GridDims, mut f: impl FnMut(usize, u32, u32, u32)) {
    let mut v = 0usize;
    for z in 0..dims.nz {
        for y in 0..dims.ny {
            for x in 0..dims.nx {
                f(v, x, y, z);
                v += 1;
            }
        }
    }
}

fn shifted(dims: GridDims, x: u32, y: u32, z: u32, axis: Axis) -> usize {
    let (mut x, mut y, mut z) = (x, y, z);
    match axis {
        Axis::X => x = (x + 1) % dims.nx,
        Axis::Y => y = (y + 1) % dims.ny,
        Axis::Z => z = (z + 1) % dims.nz,
    }
    (x + dims.nx * (y + dims.ny * z)) as usize
}

fn build_d0(dims: GridDims) -> IncidenceOperator {
    let cells = dims.cells();
    let mut rows = vec![Vec::new(); 3 * cells];
    for_each_vertex(dims, |v, x, y, z| {
        for axis in Axis::ALL {
            let head = shifted(dims, x, y, z, axis);
            rows[axis.index() * cells + v] = vec![(head as u32, 1), (v as u32, -1)];
        }
    });
    IncidenceOperator::from_rows(cells, 2, &rows)
}

fn build_d1(dims: GridDims) -> IncidenceOperator {
    let cells = dims.cells();
    let edge = |axis: Axis, v: usize| (axis.index() * cells + v) as u32;
    let mut rows = vec![Vec::new(); 3 * cells];
    for_each_vertex(dims, |v, x, y, z| {
        for normal in Axis::ALL {
            let b = normal.next();
            let c = b.next();
            let vb = shifted(dims, x, y, z, b);
            let vc = shifted(dims, x, y, z, c);
            rows[normal.index() * cells + v] = vec![
                (edge(b, v), 1),
                (edge(c, vb), 1),
                (edge(b, vc), -1),
                (edge(c, v), -1),
            ];
        }
    });
    IncidenceOperator::from_rows(3 * cells, 4, &rows)
}

fn build_d2(dims: GridDims) -> IncidenceOperator {
    let cells = dims.cells();
    let face = |axis: Axis, v: usize| (axis.index() * cells + v) as u32;
    let mut rows = vec![Vec::new(); cells];
    for_each_vertex(dims, |v, x, y, z| {
        let mut row = Vec::with_capacity(6);
        for normal in Axis::ALL {
            let plus = shifted(dims, x, y, z, normal);
            row.push((face(normal, plus), 1));
            row.push((face(normal, v), -1));
        }
        rows[v] = row;
    });
    IncidenceOperator::from_rows(3 * cells, 6, &rows)
}
