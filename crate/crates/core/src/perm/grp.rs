//! `.grp` text files: `degree n` on the first content line, then one
//! generator per line as a 1-based image list; `#` starts a comment.

use crate::error::{Error, Result};
use crate::perm::{close_group, Permutation, PermutationGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match degree {
                None => {
                    let n = line
                        .strip_prefix("degree")
                        .map(str::trim)
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| Error::GroupFile {
                            line: line_no,
                            reason: format!("expected `degree <n>`, got {line:?}"),
                        })?;
                    degree = Some(n);
                }
                Some(n) => {
                    if !line.starts_with('[') {
                        return Err(Error::GroupFile {
                            line: line_no,
                            reason: "generators must be image lists".into(),
                        });
                    }
                    let g = Permutation::parse(line, n).map_err(|e| Error::GroupFile {
                        line: line_no,
                        reason: e.to_string(),
                    })?;
                    generators.push(g);
                }
            }
        }
        let degree = degree.ok_or(Error::GroupFile {
            line: 0,
            reason: "missing `degree` line".into(),
        })?;
        Ok(GroupFile { degree, generators })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_group(group: &PermutationGroup) -> Self {
        GroupFile {
            degree: group.degree(),
            generators: group.generators().to_vec(),
        }
    }

    pub fn close(&self, cap: usize) -> Result<PermutationGroup> {
        close_group(self.degree, &self.generators, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let f = GroupFile::parse("# cyclic\ndegree 4\n[2,3,4,1] # rotation\n").unwrap();
        assert_eq!(f.degree, 4);
        assert_eq!(f.close(100).unwrap().order(), 4);
        assert_eq!(GroupFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(GroupFile::parse("degree x"), Err(Error::GroupFile { line: 1, .. })));
        assert!(matches!(
            GroupFile::parse("degree 3\n[1,2,3]\n[1,1,3]"),
            Err(Error::GroupFile { line: 3, .. })
        ));
        assert!(matches!(GroupFile::parse("degree 3\n(1 2)"), Err(Error::GroupFile { line: 2, .. })));
        assert!(GroupFile::parse("# nothing").is_err());
    }
}
