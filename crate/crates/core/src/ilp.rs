//! Integer program for best-case Max Support, written in the textual LP file
//! format.
//!
//! Variables are `x_k` (issue `k` is salient) and `y_j` (voter `j` votes for
//! the target):
//!
//! ```text
//! maximize   Σ_j y_j
//! subject to Σ_k A_ijk x_k + (1 − y_j) α ≥ 0     for every rival i, voter j
//!            Σ_k x_k ≥ 1
//!            x, y binary
//! ```
//!
//! with `α = Σ |A_ijk|`, which bounds `|Σ_k A_ijk x_k|` for every `x` and so
//! relaxes a constraint completely when `y_j = 0`. Each constraint is scaled
//! by the least common denominator of its coefficients so the file holds
//! exact integers.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::election::{Election, NormOrder, TieRule};
use crate::error::{Error, Result};
use crate::exact::Exhaustive;
use crate::rational::{common_denominator, scale_to_integers, Rational};
use crate::subsets::{
    check_cap, with_table, CanonicalSubsets, ColumnTable, IntTable, SumInt, DEFAULT_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Zero-based issue index; written `x1..xL`.
    X(usize),
    /// Zero-based voter index; written `y1..yN`.
    Y(usize),
}

impl Var {
    fn name(self) -> String {
        match self {
            Var::X(k) => format!("x{}", k + 1),
            Var::Y(j) => format!("y{}", j + 1),
        }
    }

    fn parse(name: &str) -> Option<Var> {
        let (kind, idx) = name.split_at(1);
        let idx: usize = idx.parse().ok().filter(|&i| i >= 1)?;
        match kind {
            "x" => Some(Var::X(idx - 1)),
            "y" => Some(Var::Y(idx - 1)),
            _ => None,
        }
    }
}

/// `Σ coef·var ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(Var, BigInt)>,
    pub rhs: BigInt,
}

/// A maximization problem over binary variables with `≥` constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub num_x: usize,
    pub num_y: usize,
    pub objective: Vec<(Var, BigInt)>,
    pub constraints: Vec<Constraint>,
}

/// Builds the Max Support program for `e`.
pub fn export_ilp(e: &Election, norm: NormOrder) -> IlpModel {
    let a = e.margin_tensor(norm);
    let (rivals, voters, issues) = a.dims();
    let alpha = a.alpha();
    let mut constraints = Vec::with_capacity(rivals * voters + 1);
    for i in 0..rivals {
        for j in 0..voters {
            let row = a.row(i, j);
            let scale = common_denominator(row.iter().chain(std::iter::once(&alpha)));
            let coefs = scale_to_integers(row, &scale);
            let alpha_s = scale_to_integers([&alpha], &scale).pop().unwrap();
            let mut terms: Vec<(Var, BigInt)> = coefs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Var::X(k), c))
                .collect();
            terms.push((Var::Y(j), -alpha_s.clone()));
            constraints.push(Constraint {
                name: format!("r{}_v{}", i + 2, j + 1),
                terms,
                rhs: -alpha_s,
            });
        }
    }
    constraints.push(Constraint {
        name: "nonempty".into(),
        terms: (0..issues).map(|k| (Var::X(k), BigInt::from(1))).collect(),
        rhs: BigInt::from(1),
    });
    IlpModel {
        num_x: issues,
        num_y: voters,
        objective: (0..voters).map(|j| (Var::Y(j), BigInt::from(1))).collect(),
        constraints,
    }
}

fn write_expr(out: &mut String, terms: &[(Var, BigInt)]) {
    let mut line_len = 0;
    for (idx, (v, c)) in terms.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        let piece = if idx == 0 && sign == "+" {
            format!("{} {}", c.abs(), v.name())
        } else if idx == 0 {
            format!("- {} {}", c.abs(), v.name())
        } else {
            format!(" {sign} {} {}", c.abs(), v.name())
        };
        // keep lines well under the 255-character limit of common readers
        if line_len > 0 && line_len + piece.len() > 200 {
            out.push_str("\n   ");
            line_len = 3;
        }
        line_len += piece.len();
        out.push_str(&piece);
    }
    if terms.is_empty() {
        out.push_str("0 x1");
    }
}

impl IlpModel {
    /// Renders the model as an LP file.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        out.push_str("\\ Max Support: voters whose nearest candidate is the target\n");
        out.push_str("Maximize\n obj: ");
        write_expr(&mut out, &self.objective);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}: ", c.name);
            write_expr(&mut out, &c.terms);
            let _ = writeln!(out, " >= {}", c.rhs);
        }
        out.push_str("Bounds\n");
        let vars: Vec<Var> = (0..self.num_x)
            .map(Var::X)
            .chain((0..self.num_y).map(Var::Y))
            .collect();
        for v in &vars {
            let _ = writeln!(out, " 0 <= {} <= 1", v.name());
        }
        out.push_str("Binary\n");
        for chunk in vars.chunks(16) {
            let names: Vec<String> = chunk.iter().map(|v| v.name()).collect();
            let _ = writeln!(out, " {}", names.join(" "));
        }
        out.push_str("End\n");
        out
    }

    /// Reads back the subset of the LP format that [`IlpModel::to_lp`]
    /// writes: one maximization objective, `>=`/`<=` constraints, 0–1
    /// bounds, and a binary section over `x*`/`y*` variables.
    pub fn parse_lp(text: &str) -> Result<IlpModel> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Objective,
            Constraints,
            Bounds,
            Binary,
            End,
        }
        let err = |msg: String| Error::Parse(format!("LP: {msg}"));
        let mut section = Section::None;
        let mut objective_tokens: Vec<String> = Vec::new();
        let mut constraint_tokens: Vec<String> = Vec::new();
        let mut binaries: Vec<Var> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('\\').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lower = line.to_ascii_lowercase();
            let header = match lower.as_str() {
                "maximize" | "maximise" | "maximum" | "max" => Some(Section::Objective),
                "minimize" | "minimise" | "minimum" | "min" => {
                    return Err(err("only maximization is supported".into()))
                }
                "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
                "bounds" | "bound" => Some(Section::Bounds),
                "binary" | "binaries" | "bin" => Some(Section::Binary),
                "end" => Some(Section::End),
                _ => None,
            };
            if let Some(h) = header {
                section = h;
                continue;
            }
            let tokens = line.split_whitespace().map(str::to_owned);
            match section {
                Section::Objective => objective_tokens.extend(tokens),
                Section::Constraints => constraint_tokens.extend(tokens),
                Section::Bounds => {
                    let t: Vec<&str> = line.split_whitespace().collect();
                    let ok = matches!(t.as_slice(), ["0", "<=", v, "<=", "1"] if Var::parse(v).is_some());
                    if !ok {
                        return Err(err(format!("unsupported bound {line:?}")));
                    }
                }
                Section::Binary => {
                    for t in line.split_whitespace() {
                        binaries.push(
                            Var::parse(t).ok_or_else(|| err(format!("unknown variable {t:?}")))?,
                        );
                    }
                }
                Section::None | Section::End => {
                    return Err(err(format!("unexpected line {line:?}")))
                }
            }
        }
        if section != Section::End {
            return Err(err("missing End".into()));
        }

        let mut num_x = 0;
        let mut num_y = 0;
        let mut note = |v: Var| match v {
            Var::X(k) => num_x = num_x.max(k + 1),
            Var::Y(j) => num_y = num_y.max(j + 1),
        };

        // objective: optional label, then an expression
        let mut toks = objective_tokens.as_slice();
        if toks.first().is_some_and(|t| t.ends_with(':')) {
            toks = &toks[1..];
        }
        let objective = parse_expr(toks).map_err(err)?;
        objective.iter().for_each(|(v, _)| note(*v));

        let mut constraints = Vec::new();
        let mut rest = constraint_tokens.as_slice();
        while !rest.is_empty() {
            let (name, body) = match rest[0].strip_suffix(':') {
                Some(n) => (n.to_owned(), &rest[1..]),
                None => (format!("c{}", constraints.len() + 1), rest),
            };
            let op = body
                .iter()
                .position(|t| matches!(t.as_str(), ">=" | "=>" | "<=" | "=<" | "=" | ">" | "<"))
                .ok_or_else(|| err(format!("constraint {name} has no relation")))?;
            let rhs_tok = body
                .get(op + 1)
                .ok_or_else(|| err(format!("constraint {name} has no right side")))?;
            let rhs: BigInt = rhs_tok
                .parse()
                .map_err(|_| err(format!("bad right side {rhs_tok:?}")))?;
            let mut terms = parse_expr(&body[..op]).map_err(err)?;
            terms.iter().for_each(|(v, _)| note(*v));
            let (terms, rhs) = match body[op].as_str() {
                ">=" | "=>" | ">" => (terms, rhs),
                "<=" | "=<" | "<" => {
                    terms.iter_mut().for_each(|(_, c)| *c = -c.clone());
                    (terms, -rhs)
                }
                _ => return Err(err(format!("equality constraint {name} is not supported"))),
            };
            constraints.push(Constraint { name, terms, rhs });
            rest = &body[op + 2..];
        }
        for v in &binaries {
            note(*v);
        }
        let all_binary = (0..num_x)
            .map(Var::X)
            .chain((0..num_y).map(Var::Y))
            .all(|v| binaries.contains(&v));
        if !all_binary {
            return Err(err("every variable must be declared binary".into()));
        }
        Ok(IlpModel {
            num_x,
            num_y,
            objective,
            constraints,
        })
    }

    /// Optimal objective value and an optimal `x` (as a mask), found by
    /// enumerating every `x` and choosing each `y_j` optimally. `None` when
    /// no `x` is feasible.
    ///
    /// Requires each constraint to mention at most one `y` variable.
    pub fn optimum_by_enumeration(&self, cap: usize) -> Result<Option<(BigInt, u64)>> {
        check_cap(self.num_x, cap)?;
        let mut y_of: Vec<Option<(usize, BigInt)>> = Vec::with_capacity(self.constraints.len());
        let mut rows = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let mut row = vec![BigInt::zero(); self.num_x];
            let mut y = None;
            for (v, coef) in &c.terms {
                match *v {
                    Var::X(k) => row[k] += coef,
                    Var::Y(j) => {
                        if y.as_ref().is_some_and(|(prev, _)| *prev != j) {
                            return Err(Error::Usage(format!(
                                "constraint {} couples two y variables",
                                c.name
                            )));
                        }
                        let acc = y.get_or_insert((j, BigInt::zero()));
                        acc.1 += coef;
                    }
                }
            }
            y_of.push(y);
            rows.push(row);
        }
        let x_obj: Vec<BigInt> = (0..self.num_x)
            .map(|k| {
                self.objective
                    .iter()
                    .filter(|(v, _)| *v == Var::X(k))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        let y_obj: Vec<BigInt> = (0..self.num_y)
            .map(|j| {
                self.objective
                    .iter()
                    .filter(|(v, _)| *v == Var::Y(j))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        // the objective's x-part rides along as an extra row
        rows.push(x_obj);
        let table = IntTable::from_rows(rows, self.num_x);
        Ok(with_table!(&table, |t| self.enumerate(t, &y_of, &y_obj)))
    }

    fn enumerate<T: SumInt>(
        &self,
        t: &ColumnTable<T>,
        y_of: &[Option<(usize, BigInt)>],
        y_obj: &[BigInt],
    ) -> Option<(BigInt, u64)> {
        // thresholds: x-part ≥ rhs − coef_y·y for y ∈ {0, 1}
        let need: Vec<(T, T)> = self
            .constraints
            .iter()
            .zip(y_of)
            .map(|(c, y)| {
                let coef = y.as_ref().map_or_else(BigInt::zero, |(_, c)| c.clone());
                (
                    T::from_big_saturating(&c.rhs),
                    T::from_big_saturating(&(&c.rhs - coef)),
                )
            })
            .collect();
        let mut sums = t.sums();
        let mut best: Option<(BigInt, u64)> = None;
        let mut ok = vec![[true; 2]; self.num_y];
        for mask in std::iter::once(0).chain(CanonicalSubsets::new(self.num_x)) {
            sums.set_mask(mask);
            let s = sums.get();
            ok.iter_mut().for_each(|o| *o = [true; 2]);
            let mut feasible = true;
            for (r, (lo0, lo1)) in need.iter().enumerate() {
                match &y_of[r] {
                    None => feasible &= s[r] >= *lo0,
                    Some((j, _)) => {
                        ok[*j][0] &= s[r] >= *lo0;
                        ok[*j][1] &= s[r] >= *lo1;
                    }
                }
            }
            if !feasible {
                continue;
            }
            let mut value = s[need.len()].to_big();
            for (j, o) in ok.iter().enumerate() {
                let c = &y_obj[j];
                let choice = match (o[0], o[1]) {
                    (false, false) => None,
                    (true, false) => Some(false),
                    (false, true) => Some(true),
                    (true, true) => Some(c.is_positive()),
                };
                match choice {
                    None => {
                        feasible = false;
                        break;
                    }
                    Some(true) => value += c,
                    Some(false) => {}
                }
            }
            if feasible && best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, mask));
            }
        }
        best
    }
}

fn parse_expr(tokens: &[String]) -> std::result::Result<Vec<(Var, BigInt)>, String> {
    let mut terms: Vec<(Var, BigInt)> = Vec::new();
    let mut sign = 1i32;
    let mut coef: Option<BigInt> = None;
    for t in tokens {
        match t.as_str() {
            "+" => {}
            "-" => sign = -sign,
            _ => {
                if let Ok(c) = t.parse::<BigInt>() {
                    if coef.is_some() {
                        return Err(format!("two coefficients in a row near {t:?}"));
                    }
                    coef = Some(c);
                    continue;
                }
                let v = Var::parse(t).ok_or_else(|| format!("unknown variable {t:?}"))?;
                let c = coef.take().unwrap_or_else(|| BigInt::from(1));
                terms.push((v, if sign < 0 { -c } else { c }));
                sign = 1;
            }
        }
    }
    if coef.is_some() {
        // a lone constant such as "0" with no variable
        return Err("dangling coefficient".into());
    }
    // merge repeated variables
    let mut seen: HashMap<Var, usize> = HashMap::new();
    let mut merged: Vec<(Var, BigInt)> = Vec::new();
    for (v, c) in terms {
        match seen.get(&v) {
            Some(&i) => merged[i].1 += c,
            None => {
                seen.insert(v, merged.len());
                merged.push((v, c));
            }
        }
    }
    Ok(merged)
}

/// Compares the exported program's optimum, found by enumerating `x`,
/// against exhaustive best-case Max Support. Also fails if `α` does not
/// relax some constraint at `y_j = 0`.
pub fn check_ilp_consistency(e: &Election, norm: NormOrder) -> Result<bool> {
    check_cap(e.num_issues(), DEFAULT_CAP)?;
    let model = export_ilp(e, norm);
    let exhaustive = Exhaustive::default().max_support(e, norm, TieRule::BestCase)?;
    let ilp = model.optimum_by_enumeration(DEFAULT_CAP)?;
    Ok(ilp.is_some_and(|(v, _)| v == BigInt::from(exhaustive.target_support)))
}

/// `α = Σ |A_ijk|` for an election.
pub fn big_m(e: &Election, norm: NormOrder) -> Rational {
    e.margin_tensor(norm).alpha()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Domain;

    fn intro() -> Election {
        Election::binary(
            &[vec![0, 0, 1], vec![1, 1, 0]],
            &[
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![1, 1, 0],
                vec![1, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn all_zero_margins() {
        let e = Election::from_i64(
            Domain::Real,
            &[vec![1, 2], vec![1, 2]],
            &[vec![0, 0], vec![3, 3]],
        )
        .unwrap();
        assert_eq!(big_m(&e, NormOrder::L2), Rational::zero());
        let model = export_ilp(&e, NormOrder::L2);
        assert_eq!(
            model.optimum_by_enumeration(25).unwrap().unwrap().0,
            BigInt::from(2)
        );
        assert!(check_ilp_consistency(&e, NormOrder::L2).unwrap());
    }

    #[test]
    fn intro_optimum_matches_exhaustive() {
        let e = intro();
        let model = export_ilp(&e, NormOrder::L1);
        let (value, mask) = model.optimum_by_enumeration(25).unwrap().unwrap();
        assert_eq!(value, BigInt::from(3));
        assert_eq!(mask, 0b100);
        assert!(check_ilp_consistency(&e, NormOrder::L1).unwrap());
    }

    #[test]
    fn two_candidate_binary_optimum() {
        let e = Election::binary(
            &[vec![1, 1], vec![0, 0]],
            &[vec![1, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let model = export_ilp(&e, NormOrder::L1);
        // both issues leave every voter tied, which best case resolves for the target
        assert_eq!(
            model.optimum_by_enumeration(25).unwrap().unwrap(),
            (BigInt::from(3), 0b11)
        );
        let worst = Exhaustive::default()
            .max_support(&e, NormOrder::L1, TieRule::WorstCase)
            .unwrap();
        assert_eq!(worst.target_support, 2);
    }

    #[test]
    fn lp_text_round_trips() {
        let e = Election::new(
            vec![
                vec![crate::rational::ratio(1, 3), crate::rational::int(-2)],
                vec![crate::rational::int(0), crate::rational::ratio(5, 7)],
            ],
            vec![vec![crate::rational::int(1), crate::rational::int(0)]],
            Domain::Real,
        )
        .unwrap();
        let model = export_ilp(&e, NormOrder::L2);
        let text = model.to_lp();
        assert!(
            text.contains("Maximize") && text.contains("Subject To") && text.contains("Binary")
        );
        assert!(text.contains("nonempty: 1 x1 + 1 x2 >= 1"));
        assert_eq!(IlpModel::parse_lp(&text).unwrap(), model);
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(IlpModel::parse_lp("Maximize\n obj: y1\nEnd\n").is_err());
        assert!(IlpModel::parse_lp("Minimize\n obj: y1\nEnd\n").is_err());
        assert!(IlpModel::parse_lp("Maximize\n obj: z1\nBinary\n z1\nEnd\n").is_err());
        assert!(IlpModel::parse_lp("Maximize\n obj: y1\nBinary\n y1\n").is_err());
        let ok = IlpModel::parse_lp(
            "Maximize\n obj: y1\nSubject To\n c: - y1 + x1 <= 0\nBinary\n x1 y1\nEnd\n",
        )
        .unwrap();
        assert_eq!(ok.constraints[0].rhs, BigInt::zero());
        assert_eq!(
            ok.optimum_by_enumeration(5).unwrap().unwrap().0,
            BigInt::from(1)
        );
    }
}
