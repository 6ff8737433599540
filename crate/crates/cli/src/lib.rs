//! Harness behind the `topogames` binary: space loading, analysis records and
//! CSV export, verify-suite runs, solve and strategy reports, and the
//! interactive play session.

pub mod play;
pub mod records;
pub mod reports;
pub mod suite;

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use topogames::constructions::{product, product_layout, sum};
use topogames::format::NamedSpace;

pub fn load_space(path: &Path) -> Result<NamedSpace> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    NamedSpace::parse(&text).with_context(|| format!("in {}", path.display()))
}

/// The topological sum, with point `x` of part `i` named `i.x`.
pub fn named_sum(parts: &[NamedSpace]) -> Result<(NamedSpace, topogames::constructions::SpaceFamily)> {
    if parts.is_empty() {
        bail!("a sum needs at least one part");
    }
    let spaces: Vec<_> = parts.iter().map(|p| p.space.clone()).collect();
    let s = sum(&spaces)?;
    let names = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.names.iter().map(move |x| format!("{i}.{x}")))
        .collect();
    Ok((
        NamedSpace {
            names,
            space: s.space,
        },
        s.family,
    ))
}

/// The product, with point `(x, y)` named `(x,y)`.
pub fn named_product(a: &NamedSpace, b: &NamedSpace) -> Result<NamedSpace> {
    let space = product(&a.space, &b.space)?;
    let layout = product_layout(&a.space, &b.space);
    let names = (0..space.len())
        .map(|p| {
            let (x, y) = layout.coords(p);
            format!("({},{})", a.names[x], b.names[y])
        })
        .collect();
    Ok(NamedSpace { names, space })
}
