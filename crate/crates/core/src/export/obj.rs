use std::io::Write;

use super::fixed;
use crate::error::{invalid, Result};
use crate::realize::MeshSegment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObjMode {
    /// `v` then `f` records.
    #[default]
    Faces,
    /// `v` then one `l` record per edge, for edge-frame models.
    Frame,
}

/// Wavefront OBJ subset: `v` records with 9 fixed decimals, then 1-based
/// `f` or `l` records. Output is a pure function of the segment.
pub fn write_obj<W: Write>(segment: &MeshSegment, mode: ObjMode, mut sink: W) -> Result<()> {
    if segment.vertices.is_empty() {
        return Err(invalid("cannot export an empty segment"));
    }
    for v in &segment.vertices {
        writeln!(sink, "v {} {} {}", fixed(v.x, 9), fixed(v.y, 9), fixed(v.z, 9))?;
    }
    match mode {
        ObjMode::Faces => {
            for f in &segment.faces {
                writeln!(sink, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
            }
        }
        ObjMode::Frame => {
            for e in &segment.edges {
                writeln!(sink, "l {} {}", e.ends[0] + 1, e.ends[1] + 1)?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}
