//! Human and JSON renderings of `info` and `check` results.

use serde_json::{json, Value};

use crate::channel::QuantumChannel;
use crate::numkernel::ComplexMatrix;
use crate::reversal::ReversalMethod;
use crate::thermo::{entropy_production, CrooksCheck, JarzynskiCheck, TransitionTable};
use crate::Error;

/// `x` with 15 significant digits, `%g` style.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.14e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

/// JSON number, or a string for values JSON cannot carry.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(sig(x))
    }
}

fn complex_text(re: f64, im: f64) -> String {
    if im == 0.0 {
        sig(re)
    } else if re == 0.0 {
        format!("{}i", sig(im))
    } else if im < 0.0 {
        format!("{}-{}i", sig(re), sig(-im))
    } else {
        format!("{}+{}i", sig(re), sig(im))
    }
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

/// Right-aligned table; `header` labels the columns, each row starts with
/// its label.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for row in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        let cells: Vec<String> = row
            .iter()
            .zip(&width)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        out.push_str("  ");
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn matrix_text(m: &ComplexMatrix) -> String {
    let header: Vec<String> = std::iter::once(String::new())
        .chain((0..m.cols()).map(|c| c.to_string()))
        .collect();
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| {
            std::iter::once(r.to_string())
                .chain(m.row(r).iter().map(|z| complex_text(z.re, z.im)))
                .collect()
        })
        .collect();
    table(&header, &rows)
}

fn real_table(label: &str, values: &[Vec<String>]) -> String {
    let n = values.len();
    let header: Vec<String> = std::iter::once(label.to_string())
        .chain((0..n).map(|o| format!("o={o}")))
        .collect();
    let rows: Vec<Vec<String>> = values
        .iter()
        .enumerate()
        .map(|(a, row)| std::iter::once(format!("a={a}")).chain(row.iter().cloned()).collect())
        .collect();
    table(&header, &rows)
}

/// Channel diagnostics shown by `info`.
pub struct InfoReport {
    pub dim: usize,
    pub kraus_count: usize,
    pub canonical_weights: Vec<f64>,
    pub trace_preserving: bool,
    pub unital: bool,
    pub bistochastic: bool,
    pub selfdual: bool,
    pub trace_preservation_residual: f64,
    pub unitality_residual: f64,
    pub invariant_state: Result<ComplexMatrix, Error>,
}

impl InfoReport {
    pub fn new(phi: &QuantumChannel) -> Result<Self, Error> {
        let canonical_weights = phi.canonical_weights()?;
        Ok(Self {
            dim: phi.dim(),
            kraus_count: canonical_weights.len(),
            canonical_weights,
            trace_preserving: phi.is_trace_preserving(),
            unital: phi.is_unital(),
            bistochastic: phi.is_bistochastic(),
            selfdual: phi.is_selfdual(),
            trace_preservation_residual: phi.trace_preservation_residual(),
            unitality_residual: phi.unitality_residual(),
            invariant_state: crate::reversal::invariant_state(phi).map(|s| s.into_matrix()),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "dim": self.dim,
            "kraus_rank": self.kraus_count,
            "canonical_weights": self.canonical_weights,
            "trace_preserving": self.trace_preserving,
            "unital": self.unital,
            "bistochastic": self.bistochastic,
            "selfdual": self.selfdual,
            "trace_preservation_residual": self.trace_preservation_residual,
            "unitality_residual": self.unitality_residual,
        });
        match &self.invariant_state {
            Ok(m) => v["invariant_state"] = matrix_json(m),
            Err(e) => {
                v["invariant_state"] = Value::Null;
                v["invariant_state_note"] = json!(e.to_string());
            }
        }
        v
    }

    pub fn to_text(&self) -> String {
        let weights: Vec<String> = self.canonical_weights.iter().map(|&d| sig(d)).collect();
        let mut out = format!(
            "dim: {}\nkraus rank: {}\ncanonical weights: {}\ntrace preserving: {} (residual {})\nunital: {} (residual {})\nbistochastic: {}\nselfdual: {}\n",
            self.dim,
            self.kraus_count,
            weights.join(", "),
            self.trace_preserving,
            sig(self.trace_preservation_residual),
            self.unital,
            sig(self.unitality_residual),
            self.bistochastic,
            self.selfdual,
        );
        match &self.invariant_state {
            Ok(m) => {
                out.push_str("invariant state:\n");
                out.push_str(&matrix_text(m));
            }
            Err(e) => {
                out.push_str(&format!("invariant state: none ({e})\n"));
            }
        }
        out
    }
}

/// Everything `check` prints.
pub struct CheckReport {
    pub method: ReversalMethod,
    pub beta: f64,
    pub table: TransitionTable,
    pub jarzynski: JarzynskiCheck,
    pub crooks: CrooksCheck,
}

impl CheckReport {
    pub fn max_residual(&self) -> f64 {
        self.jarzynski.residual.max(self.crooks.max_residual())
    }

    /// `dS` cells; `None` where both probabilities vanish.
    fn entropy_rows(&self) -> Vec<Vec<Option<f64>>> {
        let n = self.table.dim();
        (0..n)
            .map(|a| (0..n).map(|o| entropy_production(&self.table, a, o).ok()).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let entropy: Vec<Vec<Value>> = self
            .entropy_rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.map_or_else(|| json!("undefined"), num))
                    .collect()
            })
            .collect();
        let bins: Vec<Value> = self
            .crooks
            .bins
            .iter()
            .map(|b| {
                json!({
                    "work": num(b.work),
                    "forward": b.forward,
                    "reversed": b.reversed,
                    "residual": b.residual,
                })
            })
            .collect();
        json!({
            "method": self.method.to_string(),
            "beta": self.beta,
            "forward": self.table.forward,
            "backward": self.table.backward,
            "entropy_production": entropy,
            "jarzynski": {
                "lhs": self.jarzynski.lhs,
                "rhs": self.jarzynski.rhs,
                "residual": self.jarzynski.residual,
                "exp_work_average": self.jarzynski.exp_work_average,
            },
            "crooks": {
                "delta_f": self.crooks.delta_f,
                "bins": bins,
                "max_residual": self.crooks.max_residual(),
                "infinite_work_atoms": self.crooks.infinite_work_atoms,
                "excluded_reversed_weight": self.crooks.excluded_reversed_weight,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let fmt = |rows: &[Vec<f64>]| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.iter().map(|&x| sig(x)).collect()).collect()
        };
        let entropy: Vec<Vec<String>> = self
            .entropy_rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.map_or_else(|| "undefined".into(), sig))
                    .collect()
            })
            .collect();
        let mut out = format!("method: {}\nbeta: {}\n", self.method, sig(self.beta));
        out.push_str("\nforward <o|Phi(|a><a|)|o>:\n");
        out.push_str(&real_table("", &fmt(&self.table.forward)));
        out.push_str("\nbackward <a|Phi^R(|o><o|)|a>:\n");
        out.push_str(&real_table("", &fmt(&self.table.backward)));
        out.push_str("\nentropy production dS[a,o]:\n");
        out.push_str(&real_table("", &entropy));
        let j = &self.jarzynski;
        out.push_str(&format!(
            "\njarzynski:\n  lhs       {}\n  Z_f/Z_i   {}\n  residual  {}\n  <exp(-beta dW)>  {}\n",
            sig(j.lhs),
            sig(j.rhs),
            sig(j.residual),
            sig(j.exp_work_average)
        ));
        out.push_str(&format!("\ncrooks (dF = {}):\n", sig(self.crooks.delta_f)));
        let header: Vec<String> = ["work", "P_F(x)", "P_R(-x)", "residual"].map(String::from).to_vec();
        let rows: Vec<Vec<String>> = self
            .crooks
            .bins
            .iter()
            .map(|b| vec![sig(b.work), sig(b.forward), sig(b.reversed), sig(b.residual)])
            .collect();
        out.push_str(&table(&header, &rows));
        out.push_str(&format!("  max residual  {}\n", sig(self.crooks.max_residual())));
        if !self.crooks.infinite_work_atoms.is_empty() {
            let atoms: Vec<String> = self
                .crooks
                .infinite_work_atoms
                .iter()
                .map(|(a, o)| format!("({a},{o})"))
                .collect();
            out.push_str(&format!("  infinite work at {}\n", atoms.join(" ")));
        }
        if self.crooks.excluded_reversed_weight > 0.0 {
            out.push_str(&format!(
                "  reversed weight without forward partner  {}\n",
                sig(self.crooks.excluded_reversed_weight)
            ));
        }
        out
    }
}
