//! Command-line front end for the `mrw` library: builds a context for the
//! requested rank and characteristic, runs one computation or verification
//! suite, and renders the result as text, CSV, or JSON.
//!
//! Output is deterministic: the same flags (including `--seed`) produce the
//! same bytes.  In text format zero entries are drawn as `.`, matching the
//! table style used throughout the literature on descent algebras.

use clap::{Parser, Subcommand, ValueEnum};
use mrw::algebra::{Alg, Elem};
use mrw::charring::CharData;
use mrw::comp::SComp;
use mrw::group::Group;
use mrw::repr;
use mrw::scalar::{Field, Scalar};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "mrw", version, about = "Exact computations in the Mantaci–Reutenauer algebra of the hyperoctahedral group")]
struct Cli {
    /// Rank n of the group W_n
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Coefficient characteristic: 0 for ℚ, otherwise a prime
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Seed for the randomized checks inside `verify`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum LoewyTarget {
    Algebra,
    Irr,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Ring {
    Q,
    Z,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SuiteName {
    Positivity,
    Orders,
    Theta,
    Loewy,
    Cartan,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Character table (rows π_λ for λ p-prime, columns x_μ̂ for μ p-regular)
    Table,
    /// Cartan matrix of the lifted idempotent family
    Cartan,
    /// Lifted orthogonal idempotent family E_λ
    Idempotents,
    /// Primitive central idempotents (block sums; needs p ∤ |W_n|)
    CentralIdempotents,
    /// Echelon basis of the radical
    Radical,
    /// Echelon basis of the center
    Center,
    /// Loewy length
    Loewy {
        #[arg(long, value_enum, default_value_t = LoewyTarget::Algebra)]
        target: LoewyTarget,
    },
    /// Product of two basis elements, sparse output
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Minimal polynomial of x_C
    Minpoly {
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Dimensions of the ideals and centralizer generated by x_C
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Surjectivity of the restriction to rank k
    RestrictCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Ring::Q)]
        ring: Ring,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
    },
}

/// A rendered document: either a labeled matrix, a sparse element, a list of
/// named scalar facts, or the pass lines of a verification suite.
enum Payload {
    Table {
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<String>>,
    },
    Sparse(Vec<(String, String)>),
    Info(Vec<(String, String)>),
    Checks(Vec<String>),
}

struct Doc {
    payload: Payload,
    extras: Vec<(String, String)>,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            print!("{}", render(&cli, &doc));
            std::process::exit(0);
        }
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                mrw::Error::BadComposition(_)
                    | mrw::Error::BadBipartition(_)
                    | mrw::Error::BadCharacteristic(_)
                    | mrw::Error::CapExceeded(..)
            );
            if matches!(e, mrw::Error::CapExceeded(..)) {
                eprintln!("hint: set the MRW_CAP_N environment variable to raise the cap (at most {})", mrw::MAX_CAP_N);
            }
            std::process::exit(if usage { 2 } else { 1 });
        }
    }
}

/// Caps: single computations run up to `MRW_CAP_N` (default 6); the full
/// verification suite defaults to 5 because of its runtime.
fn check_cap(n: usize, full_suite: bool) -> mrw::Result<()> {
    let env_set = std::env::var("MRW_CAP_N").is_ok();
    let cap = if env_set {
        mrw::cap_n()
    } else if full_suite {
        mrw::DEFAULT_CAP_N
    } else {
        mrw::MAX_CAP_N
    };
    if n == 0 || n > cap {
        return Err(mrw::Error::CapExceeded(n, cap));
    }
    Ok(())
}

fn run(cli: &Cli) -> mrw::Result<Doc> {
    let full = matches!(cli.cmd, Cmd::Verify { suite: SuiteName::All });
    check_cap(cli.n, full)?;
    let field = Field::from_characteristic(cli.characteristic)?;
    // the context outlives every use in this process
    let g: &'static Group = Box::leak(Box::new(Group::new(cli.n)));
    let alg: &'static Alg<'static> = Box::leak(Box::new(Alg::new(g, field)?));

    match &cli.cmd {
        Cmd::Table => {
            let cd = CharData::new(alg)?;
            let (rows, cols, m) = cd.character_table();
            let pr = display_perm(rows.iter().map(|&i| alg.bips[i].hat()));
            let pc = display_perm(cols.iter().map(|&i| alg.bips[i].hat()));
            Ok(Doc {
                payload: Payload::Table {
                    row_labels: pr.iter().map(|&p| alg.bips[rows[p]].to_string()).collect(),
                    col_labels: pc
                        .iter()
                        .map(|&p| format!("x_{}", alg.bips[cols[p]].hat()))
                        .collect(),
                    entries: pr
                        .iter()
                        .map(|&i| pc.iter().map(|&j| m.get(i, j).display()).collect())
                        .collect(),
                },
                extras: vec![],
            })
        }
        Cmd::Cartan => {
            let cd = CharData::new(alg)?;
            let fam = repr::lift_idempotent_family(&cd)?;
            let cart = repr::cartan_matrix(&cd, &fam)?;
            let perm = display_perm(cart.labels.iter().map(|b| b.hat()));
            let labels: Vec<String> =
                perm.iter().map(|&p| cart.labels[p].to_string()).collect();
            Ok(Doc {
                payload: Payload::Table {
                    row_labels: labels.clone(),
                    col_labels: labels,
                    entries: perm
                        .iter()
                        .map(|&i| {
                            perm.iter().map(|&j| cart.entries[i][j].to_string()).collect()
                        })
                        .collect(),
                },
                extras: vec![],
            })
        }
        Cmd::Idempotents => {
            let cd = CharData::new(alg)?;
            let fam = repr::lift_idempotent_family(&cd)?;
            let perm = display_perm(fam.labels.iter().map(|&li| alg.bips[li].hat()));
            let labels =
                perm.iter().map(|&p| alg.bips[fam.labels[p]].to_string()).collect();
            let elems: Vec<Elem> = perm.iter().map(|&p| fam.elems[p].clone()).collect();
            elem_table(alg, labels, &elems)
        }
        Cmd::CentralIdempotents => {
            let cd = CharData::new(alg)?;
            let fam = repr::lift_idempotent_family(&cd)?;
            let cart = repr::cartan_matrix(&cd, &fam)?;
            let bl = repr::blocks(&cd, &fam, &cart)?;
            // number the blocks by the display position of their first label
            let lperm = display_perm(cart.labels.iter().map(|b| b.hat()));
            let mut lpos = vec![0usize; cart.labels.len()];
            for (disp, &p) in lperm.iter().enumerate() {
                lpos[p] = disp;
            }
            let mut order: Vec<usize> = (0..bl.components.len()).collect();
            order.sort_by_key(|&b| bl.components[b].iter().map(|&p| lpos[p]).min());
            let labels: Vec<String> =
                (1..=bl.idempotents.len()).map(|i| format!("F{i}")).collect();
            let elems: Vec<Elem> =
                order.iter().map(|&b| bl.idempotents[b].clone()).collect();
            let mut doc = elem_table(alg, labels, &elems)?;
            for (i, &b) in order.iter().enumerate() {
                let mut members = bl.components[b].clone();
                members.sort_by_key(|&p| lpos[p]);
                let names: Vec<String> =
                    members.iter().map(|&pos| cart.labels[pos].to_string()).collect();
                doc.extras.push((format!("block F{}", i + 1), names.join(" ")));
            }
            Ok(doc)
        }
        Cmd::Radical => {
            let cd = CharData::new(alg)?;
            let basis = repr::radical_basis(&cd);
            let labels: Vec<String> = (1..=basis.len()).map(|i| format!("r{i}")).collect();
            let mut doc = x_table(alg, labels, &basis);
            doc.extras.push(("dim".into(), basis.len().to_string()));
            Ok(doc)
        }
        Cmd::Center => {
            let basis = repr::center_basis(alg);
            let labels: Vec<String> = (1..=basis.len()).map(|i| format!("z{i}")).collect();
            let mut doc = x_table(alg, labels, &basis);
            doc.extras.push(("dim".into(), basis.len().to_string()));
            Ok(doc)
        }
        Cmd::Loewy { target } => {
            let cd = CharData::new(alg)?;
            let mut fields = Vec::new();
            match target {
                LoewyTarget::Algebra => {
                    let (ll, dims) = repr::loewy_length_algebra(&cd);
                    fields.push(("loewy length".into(), ll.to_string()));
                    fields.push((
                        "radical power dims".into(),
                        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                    ));
                }
                LoewyTarget::Irr => {
                    let ll = cd.irr_loewy_length();
                    fields.push(("loewy length".into(), ll.to_string()));
                    let dims = cd.irr_radical_power_dims();
                    fields.push((
                        "radical power dims".into(),
                        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                    ));
                }
            }
            Ok(Doc { payload: Payload::Info(fields), extras: vec![] })
        }
        Cmd::Mult { left, right } => {
            let l = SComp::parse(left)?;
            let r = SComp::parse(right)?;
            let prod = alg.multiply(&alg.x(&l)?, &alg.x(&r)?);
            let mut pairs = Vec::new();
            for (i, c) in prod.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    pairs.push((alg.comps[i].to_string(), c.display()));
                }
            }
            Ok(Doc { payload: Payload::Sparse(pairs), extras: vec![] })
        }
        Cmd::Minpoly { elem } => {
            let c = SComp::parse(elem)?;
            let a = alg.x(&c)?;
            let cd = CharData::new(alg)?;
            let f = alg.min_poly(&a);
            let candidates: Vec<Scalar> =
                (0..cd.nbip()).map(|li| cd.pi_lambda(li, &a)).collect();
            let factored = f.display_factored(&candidates);
            let coeffs: Vec<String> = f.coeffs.iter().map(|c| c.display()).collect();
            Ok(Doc {
                payload: Payload::Info(vec![
                    ("minpoly".into(), factored),
                    ("degree".into(), f.degree().to_string()),
                    ("coefficients".into(), coeffs.join(" ")),
                ]),
                extras: vec![],
            })
        }
        Cmd::Dims { elem } => {
            let c = SComp::parse(elem)?;
            let a = alg.x(&c)?;
            let (l, r, two, z) = alg.ideal_dims(&a);
            Ok(Doc {
                payload: Payload::Info(vec![
                    ("left ideal".into(), l.to_string()),
                    ("right ideal".into(), r.to_string()),
                    ("two-sided ideal".into(), two.to_string()),
                    ("centralizer".into(), z.to_string()),
                ]),
                extras: vec![],
            })
        }
        Cmd::RestrictCheck { k, ring } => {
            let res = repr::res_k_n(alg, *k)?;
            let mut fields = vec![
                ("k".into(), k.to_string()),
                ("targets".into(), res.targets.len().to_string()),
            ];
            match ring {
                Ring::Q => {
                    let rank = repr::restriction_rank_q(&res);
                    fields.push(("rank".into(), rank.to_string()));
                    fields.push(("surjective over Q".into(), (rank == res.targets.len()).to_string()));
                }
                Ring::Z => {
                    let uni = repr::restriction_smith_all_ones(&res);
                    fields.push(("surjective over Z".into(), uni.to_string()));
                }
            }
            Ok(Doc { payload: Payload::Info(fields), extras: vec![] })
        }
        Cmd::Verify { suite } => {
            let mut lines = Vec::new();
            let run_suites: &[SuiteName] = match suite {
                SuiteName::All => &[
                    SuiteName::Orders,
                    SuiteName::Theta,
                    SuiteName::Positivity,
                    SuiteName::Loewy,
                    SuiteName::Cartan,
                ],
                s => std::slice::from_ref(s),
            };
            for s in run_suites {
                match s {
                    SuiteName::Positivity => suite_positivity(g, cli.seed, &mut lines)?,
                    SuiteName::Orders => suite_orders(g, alg, &mut lines)?,
                    SuiteName::Theta => suite_theta(alg, cli.seed, &mut lines)?,
                    SuiteName::Loewy => suite_loewy(alg, &mut lines)?,
                    SuiteName::Cartan => suite_cartan(g, alg, &mut lines)?,
                    SuiteName::All => unreachable!(),
                }
            }
            Ok(Doc { payload: Payload::Checks(lines), extras: vec![] })
        }
    }
}

/// Presentation order used in the printed tables: compositions sorted by
/// length, then by parts in descending lexicographic order (bipartitions
/// via λ̂).  Returns the permutation of positions.
fn display_perm<I: Iterator<Item = SComp>>(comps: I) -> Vec<usize> {
    let keys: Vec<(usize, Vec<i32>)> = comps
        .map(|c| (c.0.len(), c.0.iter().map(|&p| -p).collect()))
        .collect();
    let mut perm: Vec<usize> = (0..keys.len()).collect();
    perm.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    perm
}

/// Coordinate table of a family of elements: in the `x′` basis when the
/// characteristic allows division by 2, else in the `x` basis.
fn elem_table(alg: &Alg, labels: Vec<String>, elems: &[Elem]) -> mrw::Result<Doc> {
    if alg.field.characteristic() == 2 {
        let mut doc = x_table(alg, labels, elems);
        doc.extras.push(("basis".into(), "x".into()));
        return Ok(doc);
    }
    let perm = display_perm(alg.comps.iter().cloned());
    let col_labels: Vec<String> =
        perm.iter().map(|&p| format!("x'_{}", alg.comps[p])).collect();
    let mut entries = Vec::with_capacity(elems.len());
    for e in elems {
        let coords = alg.to_x_prime_coords(e)?;
        entries.push(perm.iter().map(|&p| coords[p].display()).collect());
    }
    Ok(Doc {
        payload: Payload::Table { row_labels: labels, col_labels, entries },
        extras: vec![("basis".into(), "x'".into())],
    })
}

fn x_table(alg: &Alg, labels: Vec<String>, elems: &[Elem]) -> Doc {
    let perm = display_perm(alg.comps.iter().cloned());
    let col_labels: Vec<String> =
        perm.iter().map(|&p| format!("x_{}", alg.comps[p])).collect();
    let entries = elems
        .iter()
        .map(|e| perm.iter().map(|&p| e.coeffs[p].display()).collect())
        .collect();
    Doc {
        payload: Payload::Table { row_labels: labels, col_labels, entries },
        extras: vec![],
    }
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

fn fail(msg: String) -> mrw::Error {
    mrw::Error::Verification(msg)
}

fn suite_positivity(g: &'static Group, seed: u64, lines: &mut Vec<String>) -> mrw::Result<()> {
    // positivity is a characteristic-zero phenomenon; always run over ℚ
    let alg = Alg::new(g, Field::Q)?;
    let rep = alg.positivity_suite(seed, 40)?;
    if !rep.failures.is_empty() {
        return Err(fail(format!("positivity: {}", rep.failures.join("; "))));
    }
    lines.push(format!(
        "positivity: {} nonnegative elements over Q: ok",
        rep.elements_checked
    ));
    Ok(())
}

fn suite_orders(g: &'static Group, alg: &Alg, lines: &mut Vec<String>) -> mrw::Result<()> {
    let n = g.n;
    let expect = (1usize << n) * mrw::group::factorial(n);
    if g.order() != expect {
        return Err(fail(format!("orders: |W_{n}| = {} ≠ {expect}", g.order())));
    }
    lines.push(format!("orders: |W_{n}| = {}: ok", g.order()));
    if !repr::group_trace_check(alg) {
        return Err(fail("orders: trace of some L_{x_C} differs from |W_n|".into()));
    }
    lines.push("orders: tr L_{x_C} = |W_n| for every C: ok".into());
    if alg.field.characteristic() != 2 {
        let ls = alg.longest_structure()?;
        lines.push(format!(
            "orders: eigenspaces of w_{n} have dims ({}, {}): ok",
            ls.dims.0, ls.dims.1
        ));
    }
    Ok(())
}

fn suite_theta(alg: &'static Alg<'static>, seed: u64, lines: &mut Vec<String>) -> mrw::Result<()> {
    let cd = CharData::new(alg)?;
    let (rows, cols, m) = cd.character_table();
    if rows.len() != cols.len() {
        return Err(fail("theta: character table is not square".into()));
    }
    // triangularity: support only where λ ⊂ μ
    for (i, &li) in rows.iter().enumerate() {
        for (j, &mj) in cols.iter().enumerate() {
            if !m.get(i, j).is_zero()
                && !alg.cosets.bip_subset(&alg.bips[li], &alg.bips[mj])
            {
                return Err(fail(format!(
                    "theta: nonzero entry at non-⊂ pair ({}, {})",
                    alg.bips[li], alg.bips[mj]
                )));
            }
        }
    }
    lines.push(format!(
        "theta: {}×{} character table triangular for ⊂: ok",
        rows.len(),
        cols.len()
    ));
    // multiplicativity on a deterministic pseudo-random sample
    let d = alg.dim();
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    for _ in 0..20 {
        let (i, j) = (next() % d, next() % d);
        let prod = cd.theta(&alg.multiply(&alg.x_by_index(i), &alg.x_by_index(j)));
        let want = cd.cf_mul(&cd.theta(&alg.x_by_index(i)), &cd.theta(&alg.x_by_index(j)));
        if prod.phi != want.phi {
            return Err(fail(format!("theta: not multiplicative at pair ({i}, {j})")));
        }
    }
    lines.push("theta: multiplicative on 20 sampled pairs: ok".into());
    Ok(())
}

fn suite_loewy(alg: &'static Alg<'static>, lines: &mut Vec<String>) -> mrw::Result<()> {
    let cd = CharData::new(alg)?;
    let n = alg.g.n;
    let p = alg.field.characteristic();
    let (ll, _) = repr::loewy_length_algebra(&cd);
    if p == 2 {
        if !(n <= ll && ll <= 2 * n - 1) {
            return Err(fail(format!("loewy: length {ll} outside {{{n}..{}}}", 2 * n - 1)));
        }
        lines.push(format!("loewy: algebra length {ll} within {{{n}..{}}}: ok", 2 * n - 1));
    } else {
        if ll != n {
            return Err(fail(format!("loewy: algebra length {ll} ≠ {n}")));
        }
        lines.push(format!("loewy: algebra length {ll} = n: ok"));
    }
    let want_irr = if p == 0 {
        1
    } else if p == 2 {
        n + 1
    } else {
        n / p as usize + 1
    };
    let got = cd.irr_loewy_length();
    if got != want_irr {
        return Err(fail(format!("loewy: Irr length {got} ≠ {want_irr}")));
    }
    lines.push(format!("loewy: Grothendieck-algebra length {got}: ok"));
    Ok(())
}

fn suite_cartan(g: &'static Group, alg: &'static Alg<'static>, lines: &mut Vec<String>) -> mrw::Result<()> {
    let cd = CharData::new(alg)?;
    let fam = repr::lift_idempotent_family(&cd)?;
    let cart = repr::cartan_matrix(&cd, &fam)?;
    let p = alg.field.characteristic();
    if p == 0 {
        let props = repr::cartan_properties(&cart, None)?;
        lines.push(format!(
            "cartan: {}×{} unitriangular with {} parity blocks: ok",
            cart.labels.len(),
            cart.labels.len(),
            props.components.len()
        ));
    } else {
        let algq = Alg::new(g, Field::Q)?;
        let cdq = CharData::new(&algq)?;
        let famq = repr::lift_idempotent_family(&cdq)?;
        let cq = repr::cartan_matrix(&cdq, &famq)?;
        repr::cartan_cross_check(g, &cart, &cq, p)?;
        lines.push(format!(
            "cartan: {}×{} matches ᵗD·Cartan(Q)·D: ok",
            cart.labels.len(),
            cart.labels.len()
        ));
    }
    let total: usize = cart.entries.iter().flatten().sum();
    if total != alg.dim() {
        return Err(fail(format!("cartan: Σ entries = {total} ≠ dim = {}", alg.dim())));
    }
    lines.push(format!("cartan: Σ dim P_λ = {total} = dim A: ok"));
    Ok(())
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render(cli: &Cli, doc: &Doc) -> String {
    match cli.format {
        OutFormat::Text => render_text(doc),
        OutFormat::Csv => render_csv(doc),
        OutFormat::Json => render_json(cli, doc),
    }
}

fn dot(s: &str) -> &str {
    if s == "0" {
        "."
    } else {
        s
    }
}

fn render_text(doc: &Doc) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Table { row_labels, col_labels, entries } => {
            let mut widths: Vec<usize> = col_labels.iter().map(|c| c.len()).collect();
            for row in entries {
                for (j, v) in row.iter().enumerate() {
                    widths[j] = widths[j].max(dot(v).len());
                }
            }
            let label_w = row_labels.iter().map(|r| r.len()).max().unwrap_or(0);
            out.push_str(&" ".repeat(label_w));
            for (j, c) in col_labels.iter().enumerate() {
                out.push_str(&format!(" {:>w$}", c, w = widths[j]));
            }
            out.push('\n');
            for (i, row) in entries.iter().enumerate() {
                out.push_str(&format!("{:<w$}", row_labels[i], w = label_w));
                for (j, v) in row.iter().enumerate() {
                    out.push_str(&format!(" {:>w$}", dot(v), w = widths[j]));
                }
                out.push('\n');
            }
        }
        Payload::Sparse(pairs) => {
            for (k, v) in pairs {
                out.push_str(&format!("x_{k}: {v}\n"));
            }
        }
        Payload::Info(fields) => {
            for (k, v) in fields {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        Payload::Checks(lines) => {
            for l in lines {
                out.push_str(l);
                out.push('\n');
            }
        }
    }
    for (k, v) in &doc.extras {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(doc: &Doc) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Table { row_labels, col_labels, entries } => {
            let mut head = vec![String::new()];
            head.extend(col_labels.iter().map(|c| csv_field(c)));
            out.push_str(&head.join(","));
            out.push('\n');
            for (i, row) in entries.iter().enumerate() {
                let mut line = vec![csv_field(&row_labels[i])];
                line.extend(row.iter().map(|v| csv_field(v)));
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        Payload::Sparse(pairs) => {
            for (k, v) in pairs {
                out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
            }
        }
        Payload::Info(fields) => {
            for (k, v) in fields {
                out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
            }
        }
        Payload::Checks(lines) => {
            for l in lines {
                out.push_str(&csv_field(l));
                out.push('\n');
            }
        }
    }
    out
}

/// Counts and dimensions parse as integers and are emitted as JSON numbers;
/// anything else stays a string.  Field scalars (matrix entries, element
/// coordinates) are always strings — exact values like `3/2` must not change
/// type with their denominator.
fn json_count_or_string(s: &str) -> Value {
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

fn render_json(cli: &Cli, doc: &Doc) -> String {
    let meta = json!({
        "n": cli.n,
        "char": cli.characteristic,
        "seed": cli.seed,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let (labels, entries) = match &doc.payload {
        Payload::Table { row_labels, col_labels, entries } => (
            json!({ "rows": row_labels, "cols": col_labels }),
            json!(entries),
        ),
        Payload::Sparse(pairs) => {
            let keys: Vec<&String> = pairs.iter().map(|(k, _)| k).collect();
            let mut map = Map::new();
            for (k, v) in pairs {
                map.insert(k.clone(), json!(v));
            }
            (json!(keys), Value::Object(map))
        }
        Payload::Info(fields) => {
            let keys: Vec<&String> = fields.iter().map(|(k, _)| k).collect();
            let mut map = Map::new();
            for (k, v) in fields {
                map.insert(k.clone(), json_count_or_string(v));
            }
            (json!(keys), Value::Object(map))
        }
        Payload::Checks(lines) => (json!(lines.len()), json!(lines)),
    };
    let mut root = Map::new();
    root.insert("labels".into(), labels);
    root.insert("entries".into(), entries);
    for (k, v) in &doc.extras {
        root.insert(k.clone(), json_count_or_string(v));
    }
    root.insert("meta".into(), meta);
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    s.push('\n');
    s
}
