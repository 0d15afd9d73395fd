//! Mesh, net and cut-sheet output.

mod net;
mod obj;
mod svg;

pub use net::{unfold_net, Fold, FoldDirection, Label, NetLayout, NetTriangle, SeamPair};
pub use obj::{write_obj, ObjMode};
pub use svg::{
    module_layout, write_modules_svg, write_net_svg, ModuleOptions, ModuleShape, ModuleSheet, NetSvgOptions,
};

/// Fixed-point coordinate with `-0` folded into `0`.
pub(crate) fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
