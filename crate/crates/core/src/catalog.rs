//! Enumeration of every branch over a range of strip counts, with names of
//! the form `n-m(s)`, persisted as JSON or CSV.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::io::{Read, Write};

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify, VertexFigure};
use crate::band::{BandSpec, OffsetTriple};
use crate::error::{invalid, Result};
use crate::solver::{solve_band, winding_estimate, BranchSolution, HelixParams, SolverOptions};

/// Star count for 5 to 12 strips that the catalog is checked against.
pub const REFERENCE_STAR_COUNT: usize = 64;

/// Number of crossed-vertex-figure stars the catalog is checked against.
pub const REFERENCE_CROSSED_COUNT: usize = 12;

pub const CHIRALITY_NOTE: &str = "right-handed vertex helix; mirror image has twist 2*pi - theta";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub n_strips: u32,
    pub shift: u32,
    pub branch_index: usize,
    pub winding_m: u32,
    pub theta: f64,
    pub r: f64,
    pub h: f64,
    pub residual: f64,
    pub intersecting: bool,
    pub vertex_figure: VertexFigure,
    pub components: u32,
    pub chirality_note: String,
}

impl CatalogEntry {
    /// Connected, self-intersecting, and labelled by a star polygon
    /// `{n/m}` with `2 <= m < n/2`.
    pub fn is_star(&self) -> bool {
        self.components == 1 && self.intersecting && self.winding_m >= 2 && 2 * self.winding_m < self.n_strips
    }

    pub fn params(&self) -> HelixParams {
        HelixParams {
            radius: self.r,
            twist: self.theta,
            rise: self.h,
        }
    }

    pub fn band(&self) -> Result<BandSpec> {
        BandSpec::new(self.n_strips, self.shift)
    }

    /// The branch this entry was made from, with the stored (rounded) values.
    pub fn solution(&self) -> Result<BranchSolution> {
        let band = self.band()?;
        Ok(BranchSolution {
            offsets: band.offsets(),
            band: Some(band),
            params: self.params(),
            branch_index: self.branch_index,
            winding_m: Some(self.winding_m),
            residual: self.residual,
        })
    }
}

/// The persisted catalog document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub generated_by: String,
    pub options: SolverOptions,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(options: SolverOptions, entries: Vec<CatalogEntry>) -> Self {
        Self {
            generated_by: format!("helistar {}", env!("CARGO_PKG_VERSION")),
            options,
            entries,
        }
    }
}

/// Round to 15 significant digits, the precision of the persisted formats.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Fold a twist into `(0, π]`, identifying mirror images.
pub fn fold_twist(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        TAU - t
    } else {
        t
    }
}

fn base_name(n: u32, s: u32, m: u32) -> String {
    if m >= 2 {
        format!("{n}-{m}({s})")
    } else {
        format!("{n}({s}) helical deltahedron")
    }
}

/// Helix of one component of a compound branch: every `g`-th vertex.
pub fn component_params(params: &HelixParams, components: u32) -> HelixParams {
    HelixParams {
        radius: params.radius,
        twist: fold_twist(components as f64 * params.twist),
        rise: components as f64 * params.rise,
    }
}

/// Entries for one band, in branch order. Compounds are named after their
/// component.
pub fn entries_for_band(band: &BandSpec, opts: &SolverOptions) -> Result<Vec<CatalogEntry>> {
    let g = band.component_count();
    let n = band.strips();
    let s = band.shift();
    let component = if g > 1 {
        match band.split_compound()?.component_band() {
            Ok(c) => Some(c),
            Err(_) => {
                info!("band {band}: components have fewer than 3 strips, skipped");
                return Ok(Vec::new());
            }
        }
    } else {
        None
    };
    let branches = solve_band(band, opts)?;
    if branches.is_empty() {
        info!("band {band}: no admissible branch");
    }
    let mut entries: Vec<CatalogEntry> = branches
        .iter()
        .map(|sol| {
            let class = classify(sol);
            let m = sol.winding_m.unwrap_or(0);
            let name = match component {
                None => base_name(n, s, m),
                Some(cb) => {
                    let cm = winding_estimate(&cb, &component_params(&sol.params, g));
                    format!("compound {g} × {}", base_name(cb.strips(), cb.shift(), cm))
                }
            };
            CatalogEntry {
                name,
                n_strips: n,
                shift: s,
                branch_index: sol.branch_index,
                winding_m: m,
                theta: round_sig15(sol.params.twist),
                r: round_sig15(sol.params.radius),
                h: round_sig15(sol.params.rise),
                residual: round_sig15(sol.residual),
                intersecting: class.intersecting,
                vertex_figure: class.vertex_figure,
                components: g,
                chirality_note: CHIRALITY_NOTE.to_string(),
            }
        })
        .collect();

    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for e in &entries {
        *seen.entry(e.name.clone()).or_default() += 1;
    }
    for e in &mut entries {
        if seen[&e.name] > 1 {
            e.name = format!("{}#{}", e.name, e.branch_index);
        }
    }
    Ok(entries)
}

/// Every branch for `n` in `n_min..=n_max` and canonical shifts
/// `1..=n/2`, ordered by `(n, s, branch_index)`. Compounds are skipped unless
/// `include_compounds` is set.
pub fn enumerate_catalog(
    n_min: u32,
    n_max: u32,
    opts: &SolverOptions,
    include_compounds: bool,
) -> Result<Vec<CatalogEntry>> {
    if n_min < 3 {
        return Err(invalid(format!("n_min must be at least 3, got {n_min}")));
    }
    if n_min > n_max {
        return Err(invalid(format!("n_min ({n_min}) exceeds n_max ({n_max})")));
    }
    opts.validate()?;
    let bands: Vec<BandSpec> = (n_min..=n_max)
        .flat_map(|n| (1..=n / 2).map(move |s| BandSpec::new(n, s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|b| include_compounds || b.component_count() == 1)
        .collect();
    let per_band: Vec<Vec<CatalogEntry>> = bands
        .par_iter()
        .map(|b| entries_for_band(b, opts))
        .collect::<Result<_>>()?;
    Ok(per_band.into_iter().flatten().collect())
}

pub fn write_catalog<W: Write>(catalog: &Catalog, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, catalog)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

pub fn read_catalog<R: Read>(source: R) -> Result<Catalog> {
    Ok(serde_json::from_reader(source)?)
}

pub fn write_csv<W: Write>(entries: &[CatalogEntry], sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    w.write_record([
        "name",
        "n_strips",
        "shift",
        "branch_index",
        "winding_m",
        "theta",
        "r",
        "h",
        "residual",
        "intersecting",
        "vertex_figure",
        "components",
        "chirality_note",
    ])?;
    for e in entries {
        w.serialize(e)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakdownRow {
    pub n_strips: u32,
    pub shift: u32,
    pub components: u32,
    pub branches: usize,
    /// Non-intersecting `m = 1` branches.
    pub helical: usize,
    pub stars: usize,
    pub stars_simple: usize,
    pub stars_crossed: usize,
    /// Branches that are neither of the above (e.g. `m = n/2`).
    pub other: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Breakdown {
    pub rows: Vec<BreakdownRow>,
    pub star_total: usize,
    pub star_simple_total: usize,
    pub star_crossed_total: usize,
    pub crossed_total: usize,
}

/// Per-`(n, s)` counts over every enumerated band, including bands without
/// any branch.
pub fn breakdown(entries: &[CatalogEntry], n_min: u32, n_max: u32, include_compounds: bool) -> Breakdown {
    let mut rows: BTreeMap<(u32, u32), BreakdownRow> = BTreeMap::new();
    for n in n_min..=n_max {
        for s in 1..=n / 2 {
            let g = num_integer::gcd(n, s);
            if g > 1 && !include_compounds {
                continue;
            }
            rows.insert(
                (n, s),
                BreakdownRow {
                    n_strips: n,
                    shift: s,
                    components: g,
                    branches: 0,
                    helical: 0,
                    stars: 0,
                    stars_simple: 0,
                    stars_crossed: 0,
                    other: 0,
                },
            );
        }
    }
    for e in entries {
        let Some(row) = rows.get_mut(&(e.n_strips, e.shift)) else {
            continue;
        };
        row.branches += 1;
        if e.is_star() {
            row.stars += 1;
            match e.vertex_figure {
                VertexFigure::Simple => row.stars_simple += 1,
                VertexFigure::Crossed => row.stars_crossed += 1,
                VertexFigure::Indeterminate => {}
            }
        } else if e.components == 1 && !e.intersecting && e.winding_m == 1 {
            row.helical += 1;
        } else {
            row.other += 1;
        }
    }
    let rows: Vec<BreakdownRow> = rows.into_values().collect();
    Breakdown {
        star_total: rows.iter().map(|r| r.stars).sum(),
        star_simple_total: rows.iter().map(|r| r.stars_simple).sum(),
        star_crossed_total: rows.iter().map(|r| r.stars_crossed).sum(),
        crossed_total: entries
            .iter()
            .filter(|e| e.components == 1 && e.vertex_figure == VertexFigure::Crossed)
            .count(),
        rows,
    }
}

/// Plain-text table plus the comparison notes printed by `enumerate`.
pub fn render_breakdown(b: &Breakdown, n_min: u32, n_max: u32) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3} {:>3} {:>3} {:>8} {:>7} {:>5} {:>6} {:>7} {:>5}",
        "n", "s", "g", "branches", "helical", "stars", "simple", "crossed", "other"
    );
    for r in &b.rows {
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>3} {:>8} {:>7} {:>5} {:>6} {:>7} {:>5}",
            r.n_strips, r.shift, r.components, r.branches, r.helical, r.stars, r.stars_simple, r.stars_crossed, r.other
        );
    }
    let _ = writeln!(
        out,
        "star entries (connected, intersecting, 2 <= m < n/2) for n in [{n_min}, {n_max}]: {} ({} simple, {} crossed vertex figure)",
        b.star_total, b.star_simple_total, b.star_crossed_total
    );
    if (n_min, n_max) == (5, 12) {
        let verdict = if b.star_total == REFERENCE_STAR_COUNT {
            "matches"
        } else {
            "differs from"
        };
        let _ = writeln!(
            out,
            "note: star total {} {verdict} the reference count {REFERENCE_STAR_COUNT}",
            b.star_total
        );
        let _ = writeln!(
            out,
            "note: {} connected branches have a crossed vertex figure (reference set: {REFERENCE_CROSSED_COUNT})",
            b.crossed_total
        );
    }
    if n_min <= 12 && 12 <= n_max {
        let _ = writeln!(
            out,
            "note: the name 12-5(3) has gcd(12, 3) = 3; shift 3 on 12 strips is a 3-compound in this model and is not listed as a connected star"
        );
    }
    out
}

/// Connected entries whose band, star label and intersection flag match a
/// published name `n-m(s)`.
pub fn find_named(entries: &[CatalogEntry], n: u32, m: u32, s: u32) -> Vec<&CatalogEntry> {
    entries
        .iter()
        .filter(|e| e.components == 1 && e.n_strips == n && e.shift == s && e.winding_m == m && e.intersecting)
        .collect()
}

/// Offsets of an entry's band.
pub fn entry_offsets(entry: &CatalogEntry) -> Result<OffsetTriple> {
    Ok(entry.band()?.offsets())
}
