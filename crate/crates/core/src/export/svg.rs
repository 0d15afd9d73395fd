use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{Point2, Vector2};

use super::fixed;
use super::net::{FoldDirection, NetLayout};
use crate::band::EdgeClass;
use crate::error::{invalid, Result};
use crate::realize::dihedral_angles;
use crate::solver::BranchSolution;

const MOUNTAIN_DASH: &str = "4 2";
const VALLEY_DASH: &str = "4 2 1 2";
const MARGIN_MM: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetSvgOptions {
    /// Printed length of one triangle edge, millimeters.
    pub edge_mm: f64,
}

impl Default for NetSvgOptions {
    fn default() -> Self {
        Self { edge_mm: 40.0 }
    }
}

fn mm(x: f64) -> String {
    fixed(x, 3)
}

fn dash(direction: FoldDirection) -> &'static str {
    match direction {
        FoldDirection::Mountain => MOUNTAIN_DASH,
        FoldDirection::Valley => VALLEY_DASH,
    }
}

fn header<W: Write>(sink: &mut W, width: f64, height: f64, title: &str) -> std::io::Result<()> {
    writeln!(sink, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        sink,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}mm" height="{h}mm" viewBox="0 0 {w} {h}">"#,
        w = mm(width),
        h = mm(height)
    )?;
    writeln!(sink, "<title>{title}</title>")?;
    writeln!(
        sink,
        r#"<desc>Cut on solid lines. Mountain folds dashed ({MOUNTAIN_DASH}), valley folds dash-dot ({VALLEY_DASH}). Angles are interior dihedrals.</desc>"#
    )
}

/// Net drawing in millimeter user units: cut outline, fold lines with their
/// angles, and the lattice index at every seam vertex.
pub fn write_net_svg<W: Write>(net: &NetLayout, opts: &NetSvgOptions, mut sink: W) -> Result<()> {
    if opts.edge_mm.is_nan() || opts.edge_mm <= 0.0 {
        return Err(invalid("edge length must be positive"));
    }
    let e = opts.edge_mm;
    let (max_x, max_y) = net
        .points
        .values()
        .fold((0.0f64, 0.0f64), |(x, y), p| (x.max(p.x), y.max(p.y)));
    let width = max_x * e + 2.0 * MARGIN_MM;
    let height = max_y * e + 2.0 * MARGIN_MM;
    let place = |p: &Point2<f64>| (MARGIN_MM + p.x * e, MARGIN_MM + (max_y - p.y) * e);

    let title = format!("net of band {} ({} rows)", net.band, net.rows);
    header(&mut sink, width, height, &title)?;

    let outline: Vec<String> = net
        .outline()
        .iter()
        .map(|l| {
            let (x, y) = place(&net.points[l]);
            format!("{} {}", mm(x), mm(y))
        })
        .collect();
    writeln!(
        sink,
        r#"<path class="cut" d="M {} Z" fill="none" stroke="black" stroke-width="0.3"/>"#,
        outline.join(" L ")
    )?;

    for fold in &net.folds {
        let (x1, y1) = place(&net.points[&fold.ends[0]]);
        let (x2, y2) = place(&net.points[&fold.ends[1]]);
        writeln!(
            sink,
            r#"<line class="fold {dir:?}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="0.2" stroke-dasharray="{}"/>"#,
            mm(x1),
            mm(y1),
            mm(x2),
            mm(y2),
            dash(fold.direction),
            dir = fold.direction,
        )?;
        writeln!(
            sink,
            r#"<text x="{}" y="{}" font-size="2.5" text-anchor="middle">{}{}°</text>"#,
            mm(0.5 * (x1 + x2)),
            mm(0.5 * (y1 + y2)),
            fold.class.label(),
            fixed(fold.angle.to_degrees(), 1)
        )?;
    }

    for seam in &net.seams {
        for label in [seam.left, seam.right] {
            let (x, y) = place(&net.points[&label]);
            writeln!(
                sink,
                r#"<text class="seam" x="{}" y="{}" font-size="3">{}</text>"#,
                mm(x + 1.0),
                mm(y - 1.0),
                seam.index
            )?;
        }
    }
    writeln!(sink, "</svg>")?;
    sink.flush()?;
    Ok(())
}

/// Layout of the slide-together cut sheet.
///
/// Slit geometry is a convention of this tool: two straight
/// cuts of `slit_fraction` edge lengths, perpendicular to the two class-a
/// edges and starting at `slit_position` along them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleOptions {
    pub edge_mm: f64,
    /// Helix window `[0, periods·c]` whose face pairs become modules.
    pub periods: u32,
    pub columns: usize,
    pub gap_mm: f64,
    pub slit_fraction: f64,
    pub slit_position: f64,
}

impl Default for ModuleOptions {
    fn default() -> Self {
        Self {
            edge_mm: 40.0,
            periods: 2,
            columns: 4,
            gap_mm: 5.0,
            slit_fraction: 0.25,
            slit_position: 0.25,
        }
    }
}

/// One module: faces `U_k` and `D_k` joined along their class-c edge.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleShape {
    pub k: i64,
    /// Vertices `k, k + a, k + c, k + b` in sheet millimeters.
    pub outline: [Point2<f64>; 4],
    pub fold: [Point2<f64>; 2],
    pub slits: [[Point2<f64>; 2]; 2],
    pub fold_angle: f64,
    pub direction: FoldDirection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSheet {
    pub modules: Vec<ModuleShape>,
    pub width_mm: f64,
    pub height_mm: f64,
}

pub fn module_layout(solution: &BranchSolution, opts: &ModuleOptions) -> Result<ModuleSheet> {
    if opts.edge_mm.is_nan() || opts.edge_mm <= 0.0 || opts.periods < 1 || opts.columns < 1 {
        return Err(invalid(
            "module options need edge_mm > 0, periods >= 1 and columns >= 1",
        ));
    }
    if !(0.0..=1.0).contains(&opts.slit_position) || !(0.0..1.0).contains(&opts.slit_fraction) {
        return Err(invalid("slit position and length are fractions of an edge"));
    }
    let e = opts.edge_mm;
    let c = solution.offsets.c() as i64;
    let count = (opts.periods as i64 * c - c + 1) as usize;
    let fold_angle = dihedral_angles(solution).get(EdgeClass::C);
    let direction = if fold_angle < PI {
        FoldDirection::Mountain
    } else {
        FoldDirection::Valley
    };

    let h = 3f64.sqrt() / 2.0;
    // Local rhombus, unit edge: fold edge k -> k + c along x.
    let local = [
        Point2::new(0.0, h),
        Point2::new(0.5, 0.0),
        Point2::new(1.5, 0.0),
        Point2::new(1.0, h),
    ];
    let centre = Point2::new(0.75, h / 2.0);
    let cell_w = 1.5 * e + opts.gap_mm;
    let cell_h = h * e + opts.gap_mm;

    let slit = |from: Point2<f64>, to: Point2<f64>| {
        let start = from + (to - from) * opts.slit_position;
        let along = (to - from).normalize();
        let mut inward = Vector2::new(-along.y, along.x);
        if inward.dot(&(centre - start)) < 0.0 {
            inward = -inward;
        }
        [start, start + inward * opts.slit_fraction]
    };
    // Outline order k, k+a, k+c, k+b: class-a edges are k -> k+a and k+c -> k+b.
    let [k0, ka, kc, kb] = [local[1], local[0], local[3], local[2]];
    let unit_slits = [slit(k0, ka), slit(kc, kb)];

    let modules = (0..count)
        .map(|idx| {
            let col = idx % opts.columns;
            let row = idx / opts.columns;
            let offset = Vector2::new(MARGIN_MM + col as f64 * cell_w, MARGIN_MM + row as f64 * cell_h);
            let to_sheet = |p: Point2<f64>| Point2::new(p.x * e, p.y * e) + offset;
            ModuleShape {
                k: idx as i64,
                outline: [k0, ka, kc, kb].map(to_sheet),
                fold: [to_sheet(k0), to_sheet(kc)],
                slits: unit_slits.map(|s| s.map(to_sheet)),
                fold_angle,
                direction,
            }
        })
        .collect();
    let rows = count.div_ceil(opts.columns);
    Ok(ModuleSheet {
        modules,
        width_mm: 2.0 * MARGIN_MM + opts.columns.min(count) as f64 * cell_w,
        height_mm: 2.0 * MARGIN_MM + rows as f64 * cell_h,
    })
}

pub fn write_modules_svg<W: Write>(solution: &BranchSolution, opts: &ModuleOptions, mut sink: W) -> Result<()> {
    let sheet = module_layout(solution, opts)?;
    let title = match solution.band {
        Some(b) => format!("modules for band {b}, branch {}", solution.branch_index),
        None => format!(
            "modules for offsets {}, branch {}",
            solution.offsets, solution.branch_index
        ),
    };
    header(&mut sink, sheet.width_mm, sheet.height_mm, &title)?;
    writeln!(
        sink,
        r#"<text x="{}" y="{}" font-size="3">slit convention (tool default, not measured from physical models): {} slits per module, length {} edge, at {} of each class-a edge</text>"#,
        mm(MARGIN_MM),
        mm(MARGIN_MM / 2.0),
        2,
        fixed(opts.slit_fraction, 3),
        fixed(opts.slit_position, 3)
    )?;
    for m in &sheet.modules {
        let pts: Vec<String> = m.outline.iter().map(|p| format!("{} {}", mm(p.x), mm(p.y))).collect();
        writeln!(
            sink,
            r#"<path class="cut" d="M {} Z" fill="none" stroke="black" stroke-width="0.3"/>"#,
            pts.join(" L ")
        )?;
        writeln!(
            sink,
            r#"<line class="fold {dir:?}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="0.2" stroke-dasharray="{}"/>"#,
            mm(m.fold[0].x),
            mm(m.fold[0].y),
            mm(m.fold[1].x),
            mm(m.fold[1].y),
            dash(m.direction),
            dir = m.direction,
        )?;
        for s in &m.slits {
            writeln!(
                sink,
                r#"<line class="slit" x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="0.3"/>"#,
                mm(s[0].x),
                mm(s[0].y),
                mm(s[1].x),
                mm(s[1].y)
            )?;
        }
        let mid = Point2::from((m.fold[0].coords + m.fold[1].coords) / 2.0);
        writeln!(
            sink,
            r#"<text x="{}" y="{}" font-size="3" text-anchor="middle">k={} c{}°</text>"#,
            mm(mid.x),
            mm(mid.y - 1.0),
            m.k,
            fixed(m.fold_angle.to_degrees(), 1)
        )?;
    }
    writeln!(sink, "</svg>")?;
    sink.flush()?;
    Ok(())
}
