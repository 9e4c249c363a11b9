//! Plain-text generator manifests.
//!
//! ```text
//! group: cyclic:3
//! n: 2
//! degree: 9
//! gen: (0 1 2)
//! gen: (0 3 6)(1 4 7)(2 5 8)
//! order: 81
//! ```
//!
//! The `order:` line is only written for oracle results.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::wreath::WreathTower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub group: String,
    pub levels: usize,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub order: Option<BigUint>,
}

impl Manifest {
    pub fn for_tower(tower: &WreathTower, group: &str) -> Manifest {
        Manifest {
            group: group.to_owned(),
            levels: tower.levels(),
            degree: tower.degree(),
            generators: tower.top_generators().to_vec(),
            order: None,
        }
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group)?;
        writeln!(f, "n: {}", self.levels)?;
        writeln!(f, "degree: {}", self.degree)?;
        for g in &self.generators {
            writeln!(f, "gen: {g}")?;
        }
        if let Some(order) = &self.order {
            writeln!(f, "order: {order}")?;
        }
        Ok(())
    }
}

impl FromStr for Manifest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Manifest> {
        let mut group = None;
        let mut levels = None;
        let mut degree = None;
        let mut order = None;
        let mut gen_text = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Format(format!("manifest line without key: `{line}`")))?;
            let value = value.trim();
            let num = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad number `{v}`")))
            };
            match key.trim() {
                "group" => group = Some(value.to_owned()),
                "n" => levels = Some(num(value)?),
                "degree" => degree = Some(num(value)?),
                "gen" => gen_text.push(value.to_owned()),
                "order" => {
                    order = Some(
                        value
                            .parse::<BigUint>()
                            .map_err(|_| Error::Format(format!("bad order `{value}`")))?,
                    )
                }
                other => return Err(Error::Format(format!("unknown manifest key `{other}`"))),
            }
        }
        let missing = |k: &str| Error::Format(format!("manifest is missing `{k}:`"));
        let degree = degree.ok_or_else(|| missing("degree"))?;
        let generators = gen_text
            .iter()
            .map(|t| Perm::parse_cycles(t, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(Manifest {
            group: group.ok_or_else(|| missing("group"))?,
            levels: levels.ok_or_else(|| missing("n"))?,
            degree,
            generators,
            order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use crate::wreath::iterated_wreath;

    #[test]
    fn tower_manifest_text() {
        let t = iterated_wreath(&named_group("cyclic", Some(3)).unwrap(), 2).unwrap();
        let m = Manifest::for_tower(&t, "cyclic:3");
        assert_eq!(
            m.to_string(),
            "group: cyclic:3\nn: 2\ndegree: 9\ngen: (0 1 2)\ngen: (0 3 6)(1 4 7)(2 5 8)\n"
        );
        assert_eq!(m.to_string().parse::<Manifest>().unwrap(), m);
    }

    #[test]
    fn order_line_and_errors() {
        let text = "group: @g.txt\nn: 1\ndegree: 3\ngen: (1 2)\ngen: (0 1 2)\norder: 6\n";
        let m: Manifest = text.parse().unwrap();
        assert_eq!(m.order, Some(BigUint::from(6u32)));
        assert_eq!(m.to_string(), text);
        assert!("group: x\nn: 1\n".parse::<Manifest>().is_err());
        assert!("bogus line".parse::<Manifest>().is_err());
        assert!("group: x\nn: 1\ndegree: 2\ngen: (0 5)\n"
            .parse::<Manifest>()
            .is_err());
    }
}
