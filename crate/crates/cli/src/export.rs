//! OFF export, the one lossy output path.

use inscriber::builder::InscribedPolytope;
use inscriber::kernel::format_approx;
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// SHA-256 of the compact JSON form of `p`.
pub fn source_hash(p: &InscribedPolytope) -> String {
    let bytes = serde_json::to_vec(p).expect("serializable");
    format!("{:x}", Sha256::digest(bytes))
}

/// OFF text (`nOFF` with the dimension when `d != 3`). Coordinates are
/// written by [`format_approx`], so each is within `10^-digits` of the
/// exact value.
pub fn to_off(p: &InscribedPolytope, digits: usize) -> Result<String> {
    if p.facets.is_empty() {
        return Err(CliError::Input("polytope has no facets".into()));
    }
    let mut s = if p.d == 3 { "OFF\n".to_string() } else { format!("nOFF\n{}\n", p.d) };
    s.push_str(&format!("# sha256 {}\n", source_hash(p)));
    s.push_str(&format!("# north {} digits {}\n", p.north, digits));
    s.push_str(&format!("{} {} 0\n", p.vertices.len(), p.facets.len()));
    for v in &p.vertices {
        let cs: Vec<String> = v.coords().iter().map(|x| format_approx(x, digits)).collect();
        s.push_str(&cs.join(" "));
        s.push('\n');
    }
    for f in &p.facets {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        s.push_str(&format!("{} {}\n", f.len(), ids.join(" ")));
    }
    Ok(s)
}
