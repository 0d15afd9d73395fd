//! Strip bands and their image on the integer index line.
//!
//! A band of `n` side-by-side triangle strips has vertices `(i, j)` where `i`
//! in `0..=n` picks the strip boundary line and `j` the position along it.
//! Closing the band glues `(n, j)` onto `(0, j + s)`. The map
//! `φ(i, j) = i·s + j·n` sends every lattice vertex to one integer index so
//! that glued labels agree. Lattice edges then become index differences
//! `a = min(s, n - s)`, `b = max(s, n - s)` and `c = n`, and every triangle is
//! one of two families per base index `k`:
//!
//! * `U_k = (k, k + a, k + c)`
//! * `D_k = (k, k + c, k + b)`
//!
//! With that vertex order each shared edge is walked in opposite directions
//! by its two faces.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Number of strips and the gluing shift of a closed band.
///
/// The shift is stored in canonical form `s <= n / 2`; `s` and `n - s` glue
/// mirror images of the same object. The value the caller asked for is kept
/// in [`BandSpec::requested_shift`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandSpec {
    strips: u32,
    shift: u32,
    requested_shift: u32,
}

impl BandSpec {
    pub fn new(strips: u32, shift: u32) -> Result<Self> {
        if strips < 3 {
            return Err(invalid(format!("need at least 3 strips, got {strips}")));
        }
        if shift < 1 || shift >= strips {
            return Err(invalid(format!(
                "shift must lie in 1..={} for {strips} strips, got {shift}",
                strips - 1
            )));
        }
        Ok(Self {
            strips,
            shift: shift.min(strips - shift),
            requested_shift: shift,
        })
    }

    pub fn strips(&self) -> u32 {
        self.strips
    }

    /// Canonical shift, `1 <= s <= n / 2`.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn requested_shift(&self) -> u32 {
        self.requested_shift
    }

    /// True when the requested shift was replaced by its mirror `n - s`.
    pub fn is_mirrored(&self) -> bool {
        self.requested_shift != self.shift
    }

    pub fn offsets(&self) -> OffsetTriple {
        offsets_from_band(self)
    }

    pub fn component_count(&self) -> u32 {
        component_count(self)
    }

    pub fn split_compound(&self) -> Result<Compound> {
        split_compound(self)
    }

    /// Index-line image `φ(i, j) = i·s + j·n` of lattice label `(i, j)`.
    pub fn lattice_index(&self, i: i64, j: i64) -> i64 {
        i * self.shift as i64 + j * self.strips as i64
    }
}

impl fmt::Display for BandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.strips, self.shift)
    }
}

/// Index differences `(a, b, c = a + b)` of the three edge classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetTriple {
    a: u32,
    b: u32,
}

impl OffsetTriple {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 1 || a > b {
            return Err(invalid(format!("offsets need 1 <= a <= b, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.a + self.b
    }

    pub fn offset(&self, class: EdgeClass) -> u32 {
        match class {
            EdgeClass::A => self.a,
            EdgeClass::B => self.b,
            EdgeClass::C => self.c(),
        }
    }

    /// Number of disjoint components, `gcd(a, b)`.
    pub fn component_count(&self) -> u32 {
        self.a.gcd(&self.b)
    }

    /// `a == b` collapses both face families onto the same vertex triples.
    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn class_of(&self, difference: i64) -> Option<EdgeClass> {
        let d = difference.unsigned_abs();
        EdgeClass::ALL.into_iter().find(|&class| self.offset(class) as u64 == d)
    }

    pub fn neighbor_cycle(&self) -> [i64; 6] {
        vertex_neighbor_cycle(self)
    }

    /// The six faces around index `k`, in the order of [`Self::neighbor_cycle`]:
    /// the face at position `i` holds `k`, `k + cycle[i]` and `k + cycle[i + 1]`.
    pub fn incident_faces(&self, k: i64) -> [FaceId; 6] {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c() as i64);
        [
            FaceId::down(k),
            FaceId::up(k - a),
            FaceId::down(k - c),
            FaceId::up(k - c),
            FaceId::down(k - b),
            FaceId::up(k),
        ]
    }

    /// The two faces on the edge of `class` from `k` to `k + offset`. The
    /// first walks the edge forward, the second backward.
    pub fn edge_faces(&self, class: EdgeClass, k: i64) -> (FaceId, FaceId) {
        let (a, b) = (self.a as i64, self.b as i64);
        match class {
            EdgeClass::A => (FaceId::up(k), FaceId::down(k - b)),
            EdgeClass::B => (FaceId::up(k - a), FaceId::down(k)),
            EdgeClass::C => (FaceId::down(k), FaceId::up(k)),
        }
    }
}

impl fmt::Display for OffsetTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    A,
    B,
    C,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 3] = [EdgeClass::A, EdgeClass::B, EdgeClass::C];

    pub fn label(&self) -> &'static str {
        match self {
            EdgeClass::A => "a",
            EdgeClass::B => "b",
            EdgeClass::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceKind {
    Up,
    Down,
}

/// One triangle of the infinite polyhedron, `U_base` or `D_base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId {
    pub kind: FaceKind,
    pub base: i64,
}

impl FaceId {
    pub fn up(base: i64) -> Self {
        Self {
            kind: FaceKind::Up,
            base,
        }
    }

    pub fn down(base: i64) -> Self {
        Self {
            kind: FaceKind::Down,
            base,
        }
    }

    /// Vertex indices in the orientation fixed for the whole lattice.
    pub fn vertices(&self, offsets: &OffsetTriple) -> [i64; 3] {
        let (a, b, c) = (offsets.a as i64, offsets.b as i64, offsets.c() as i64);
        let k = self.base;
        match self.kind {
            FaceKind::Up => [k, k + a, k + c],
            FaceKind::Down => [k, k + c, k + b],
        }
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            kind: self.kind,
            base: self.base + by,
        }
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            FaceKind::Up => 'U',
            FaceKind::Down => 'D',
        };
        write!(f, "{tag}_{}", self.base)
    }
}

/// Result of splitting a band with `gcd(n, s) = g > 1`.
///
/// The component counts are kept raw because a component may have fewer than
/// three strips (e.g. `(6, 3)` splits into three 2-strip bands).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Compound {
    pub components: u32,
    pub strips: u32,
    pub shift: u32,
}

impl Compound {
    pub fn component_band(&self) -> Result<BandSpec> {
        BandSpec::new(self.strips, self.shift)
    }
}

pub fn offsets_from_band(spec: &BandSpec) -> OffsetTriple {
    let s = spec.shift;
    let n = spec.strips;
    OffsetTriple {
        a: s.min(n - s),
        b: s.max(n - s),
    }
}

pub fn component_count(spec: &BandSpec) -> u32 {
    spec.strips.gcd(&spec.shift)
}

pub fn split_compound(spec: &BandSpec) -> Result<Compound> {
    let g = component_count(spec);
    if g == 1 {
        return Err(Error::NotACompound {
            strips: spec.strips,
            shift: spec.shift,
        });
    }
    Ok(Compound {
        components: g,
        strips: spec.strips / g,
        shift: spec.shift / g,
    })
}

/// Neighbors of vertex 0 in face-adjacency order: `[c, b, -a, -c, -b, a]`.
pub fn vertex_neighbor_cycle(offsets: &OffsetTriple) -> [i64; 6] {
    let (a, b, c) = (offsets.a as i64, offsets.b as i64, offsets.c() as i64);
    [c, b, -a, -c, -b, a]
}
