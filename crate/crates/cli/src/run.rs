//! Dispatch a [`JobSpec`] to the library and collect a [`Report`].

use crate::job::{Command, JobSpec, Range};
use crate::report::{dim, windowed, Report};
use filtdef::algebra::{assoc_graded, compare_gr_with_imin, origin_ideal, rees_presentation, GradedAlgebraPresentation};
use filtdef::cyclic::{bicomplex_homology, hp_six_term, michler_hc, sbi_dimension_check, smooth_hodge, FDAlgebra, Theory};
use filtdef::differentials::{de_rham_cohomology_with, naive_de_rham_cohomology};
use filtdef::exactseq::{solve, Solution};
use filtdef::geometry::{blowup_square, is_smooth, isolated_singularity_at_origin, singular_locus};
use filtdef::ktheory::{ktilde_low_degree, main_theorem, verify_hypotheses, Hypotheses};
use filtdef::{Bounds, Error, Ideal, Polynomial, Result, Ring, RingRef, Stability, WindowedDim};

/// Exit status for a failed job.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) => 2,
        Error::NotStabilized(_) | Error::IterationCap { .. } => 3,
        _ => 1,
    }
}

/// The outcome of [`run`]: the exit status and the report to print.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Report,
}

struct Ctx {
    ring: RingRef,
    ideal: Ideal,
    bounds: Bounds,
    /// Set when some reported window failed to settle.
    unstable: bool,
}

impl Ctx {
    fn note(&mut self, w: &WindowedDim) -> String {
        if w.status == Stability::Unstable {
            self.unstable = true;
        }
        windowed(w)
    }
}

fn gens(i: &Ideal) -> String {
    let g: Vec<String> = i.gens().iter().map(Polynomial::to_string).collect();
    format!("<{}>", g.join(", "))
}

fn center(spec: &JobSpec, ring: &RingRef) -> Result<Ideal> {
    match &spec.center {
        Some(c) => Ideal::parse(ring, c),
        None => Ok(origin_ideal(ring)),
    }
}

fn range_or(r: Option<Range>, lo: i64, hi: i64) -> (i64, i64) {
    r.map(|r| (r.0, r.1)).unwrap_or((lo, hi))
}

/// Run a job. Errors are reported in the returned report and mapped to a
/// nonzero exit status.
pub fn run(spec: &JobSpec) -> Outcome {
    let mut report = Report::new();
    report.section("job");
    report.kv("command", spec.command);
    report.kv("vars", spec.vars.join(","));
    report.kv("ideal", if spec.ideal.is_empty() { "<>".to_string() } else { format!("<{}>", spec.ideal.join(", ")) });
    let b = spec.bounds();
    report.kv("bounds.degree_bound", b.degree_bound);
    report.kv("bounds.truncation", b.truncation);
    report.kv("bounds.cech_window", format!("{}..{}", b.cech_window.0, b.cech_window.1));
    let res = setup(spec).and_then(|mut ctx| {
        dispatch(spec, &mut ctx, &mut report)?;
        Ok(ctx.unstable)
    });
    report.section("status");
    let code = match res {
        Ok(false) => 0,
        Ok(true) => {
            report.kv("error", "not stabilized: some window sequence did not settle");
            3
        }
        Err(e) => {
            report.kv("error", &e);
            exit_code(&e)
        }
    };
    report.kv("exit", code);
    Outcome { code, report }
}

fn setup(spec: &JobSpec) -> Result<Ctx> {
    if spec.vars.is_empty() {
        return Err(Error::InvalidInput("no variables given (--vars)".into()));
    }
    let ring = Ring::new(&spec.vars)?;
    let ideal = Ideal::parse(&ring, &spec.ideal)?;
    Ok(Ctx { ring, ideal, bounds: spec.bounds(), unstable: false })
}

fn dispatch(spec: &JobSpec, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let nv = ctx.ring.nvars() as i64;
    match spec.command {
        Command::TangentCone => tangent_cone(ctx, r),
        Command::Gr => gr(spec, ctx, r),
        Command::Rees => rees(spec, ctx, r),
        Command::Blowup => blowup(spec, ctx, r),
        Command::SmoothCheck => smooth_check(ctx, r),
        Command::Derham => derham(range_or(spec.n, 0, nv), ctx, r),
        Command::HcBicomplex => hc_bicomplex(range_or(spec.n, 0, 4), ctx, r),
        Command::Hodge => hodge(range_or(spec.n, 0, nv), range_or(spec.i, 0, nv), ctx, r),
        Command::Michler => michler(range_or(spec.n, 0, nv + 2), range_or(spec.i, 0, nv + 2), ctx, r),
        Command::HpSixTerm => six_term(spec, ctx, r),
        Command::MainTheorem => main_thm(range_or(spec.i, 0, 0), range_or(spec.n, -3, -1), ctx, r),
        Command::Ktilde => ktilde(ctx, r),
    }
}

fn presentation(r: &mut Report, prefix: &str, p: &GradedAlgebraPresentation) {
    r.kv(format!("{prefix}.vars"), p.ring().vars().join(","));
    let w: Vec<String> = p.weights.iter().map(|w| w.to_string()).collect();
    r.kv(format!("{prefix}.weights"), w.join(","));
    r.kv(format!("{prefix}.relations"), gens(&p.relations));
}

fn hilbert(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn tangent_cone(ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    ctx.ideal.check_origin()?;
    let imin = ctx.ideal.ideal_min()?.reduced();
    r.section("tangent cone");
    r.kv("imin", gens(&imin));
    r.kv("imin.proper", !imin.is_unit());
    let gr = assoc_graded(&ctx.ideal, &origin_ideal(&ctx.ring))?;
    let chk = compare_gr_with_imin(&gr, &imin, ctx.bounds.degree_bound)?;
    r.kv("hilbert.gr", hilbert(&chk.hilbert_gr));
    r.kv("hilbert.imin", hilbert(&chk.hilbert_min));
    r.kv("gr_matches_imin", chk.holds());
    Ok(())
}

fn gr(spec: &JobSpec, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let c = center(spec, &ctx.ring)?;
    let g = assoc_graded(&ctx.ideal, &c)?;
    r.section("associated graded");
    r.kv("center", gens(&c));
    presentation(r, "gr", &g);
    if g.is_homogeneous() && g.weights.iter().all(|&w| w > 0) {
        r.kv("hilbert", hilbert(&g.hilbert_function(ctx.bounds.degree_bound)?));
    }
    if c == origin_ideal(&ctx.ring) {
        let imin = ctx.ideal.ideal_min()?;
        r.kv("gr_matches_imin", compare_gr_with_imin(&g, &imin, ctx.bounds.degree_bound)?.holds());
    }
    Ok(())
}

fn rees(spec: &JobSpec, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let c = center(spec, &ctx.ring)?;
    let p = rees_presentation(&ctx.ideal, &c)?;
    r.section("Rees algebra");
    r.kv("center", gens(&c));
    presentation(r, "rees", &p);
    Ok(())
}

fn blowup(spec: &JobSpec, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let c = center(spec, &ctx.ring)?;
    let sq = blowup_square(&ctx.ideal, &c)?;
    r.section("blowup");
    r.kv("center", gens(&c));
    presentation(r, "rees", &sq.rees);
    presentation(r, "exceptional", &sq.e);
    let mut rows = Vec::new();
    for ch in &sq.y_charts {
        rows.push(vec!["Y".into(), ch.description.clone(), ch.relations.ring().vars().join(","), gens(&ch.relations), is_smooth(&ch.relations)?.to_string()]);
    }
    for ch in &sq.e_charts {
        rows.push(vec!["E".into(), ch.description.clone(), ch.relations.ring().vars().join(","), gens(&ch.relations), is_smooth(&ch.relations)?.to_string()]);
    }
    r.table("charts", &["space", "chart", "vars", "relations", "smooth"], rows);
    Ok(())
}

fn smooth_check(ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    r.section("smoothness");
    r.kv("dimension", ctx.ideal.krull_dimension()?);
    let locus = singular_locus(&ctx.ideal)?;
    r.kv("smooth", locus.is_unit());
    r.kv("singular_locus", gens(&locus));
    let at_origin = match isolated_singularity_at_origin(&ctx.ideal) {
        Ok(v) => v.to_string(),
        Err(Error::InvalidInput(m)) => format!("n/a ({m})"),
        Err(e) => return Err(e),
    };
    r.kv("isolated_at_origin", at_origin);
    Ok(())
}

fn derham(n: (i64, i64), ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let smooth = is_smooth(&ctx.ideal)?;
    r.section("de Rham cohomology");
    r.kv("complex", if smooth { "Kähler forms (smooth)" } else { "naive, forms of the ambient ring" });
    let mut rows = Vec::new();
    for p in n.0.max(0)..=n.1 {
        let w = if smooth {
            de_rham_cohomology_with(&ctx.ideal, p as usize, &ctx.bounds, true)?
        } else {
            naive_de_rham_cohomology(&ctx.ideal, p as usize, &ctx.bounds, true)?
        };
        rows.push(vec![p.to_string(), ctx.note(&w)]);
    }
    r.table("derham", &["p", "dim H^p"], rows);
    Ok(())
}

fn hc_bicomplex(n: (i64, i64), ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let alg = FDAlgebra::from_quotient(&ctx.ideal)?;
    let t = ctx.bounds.truncation;
    r.section("bicomplex");
    r.kv("algebra.dim", alg.dim());
    r.kv("algebra.basis", alg.basis_labels.join(","));
    let hc = bicomplex_homology(&alg, Theory::HC, n, t)?;
    let hn = bicomplex_homology(&alg, Theory::HN, n, t)?;
    let hp = bicomplex_homology(&alg, Theory::HP, n, t)?;
    let rows = (n.0..=n.1).map(|k| vec![k.to_string(), hc[&k].to_string(), hn[&k].to_string(), hp[&k].to_string()]).collect();
    r.table("cyclic", &["n", "HC", "HN", "HP"], rows);
    r.kv("sbi_exact", sbi_dimension_check(&alg, n, t)?);
    Ok(())
}

fn hodge(n: (i64, i64), i: (i64, i64), ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    r.section("Hodge components (smooth)");
    let mut rows = Vec::new();
    for nn in n.0..=n.1 {
        for ii in i.0..=i.1 {
            let mut row = vec![nn.to_string(), ii.to_string()];
            for th in [Theory::HC, Theory::HN, Theory::HP] {
                row.push(dim(&smooth_hodge(&ctx.ideal, th, nn, ii, &ctx.bounds)?));
            }
            rows.push(row);
        }
    }
    r.table("hodge", &["n", "i", "HC", "HN", "HP"], rows);
    Ok(())
}

fn michler(n: (i64, i64), i: (i64, i64), ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    r.section("Hodge components of HC (hypersurface)");
    let mut rows = Vec::new();
    for nn in n.0..=n.1 {
        for ii in i.0..=i.1 {
            rows.push(vec![nn.to_string(), ii.to_string(), dim(&michler_hc(&ctx.ideal, nn, ii, &ctx.bounds)?)]);
        }
    }
    r.table("michler", &["n", "i", "HC"], rows);
    Ok(())
}

fn solution(r: &mut Report, prefix: &str, sol: &Solution) {
    let rows = sol
        .instance
        .slots
        .iter()
        .enumerate()
        .map(|(k, s)| vec![k.to_string(), s.label.clone(), dim(&s.state), s.note.clone()])
        .collect();
    r.table(format!("{prefix}slots"), &["#", "slot", "dim", "note"], rows);
    let ranks: Vec<String> = sol.instance.map_ranks.iter().map(|(m, k)| format!("{m}:{k}")).collect();
    r.kv(format!("{prefix}map_ranks"), ranks.join(","));
    for (k, d) in sol.log.iter().enumerate() {
        r.kv(format!("{prefix}log.{k}"), d.to_machine());
    }
}

fn six_term(spec: &JobSpec, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let c = center(spec, &ctx.ring)?;
    let sq = blowup_square(&ctx.ideal, &c)?;
    let les = hp_six_term(&sq, &ctx.bounds)?;
    r.section("six-term sequence");
    r.kv("center", gens(&c));
    let sol = solve(&les)?;
    solution(r, "", &sol);
    Ok(())
}

fn hypotheses(r: &mut Report, h: &Hypotheses) {
    r.section("hypotheses");
    r.kv("imin", gens(&h.imin));
    r.kv("imin_proper", h.imin_proper);
    r.kv("e_smooth", h.e_smooth);
    r.kv("y_smooth", h.y_smooth);
    r.kv("isolated", h.isolated);
    r.kv("dimension", h.dimension);
    r.kv("pass", h.pass());
}

fn checked_hypotheses(ctx: &Ctx, r: &mut Report) -> Result<Hypotheses> {
    let h = verify_hypotheses(&ctx.ideal)?;
    hypotheses(r, &h);
    if !h.pass() {
        return Err(Error::Hypothesis(h.failures().join("; ")));
    }
    Ok(h)
}

fn main_thm(i: (i64, i64), n: (i64, i64), ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    checked_hypotheses(ctx, r)?;
    let rep = main_theorem(&ctx.ideal, i, n, &ctx.bounds)?;
    for (hi, sol) in &rep.les_per_i {
        r.section(format!("sequence i={hi}"));
        solution(r, &format!("i{hi}."), sol);
    }
    r.section("K~ table");
    let rows = rep.ktilde.iter().map(|((nn, j), v)| vec![nn.to_string(), j.to_string(), dim(v)]).collect();
    r.table("ktilde", &["n", "j", "dim K~^(j)_n"], rows);
    let d = rep.hypotheses.dimension;
    let target = ctx.note(&rep.surjection_target);
    r.kv(format!("dim H^{d}(Y,O)"), target);
    Ok(())
}

fn ktilde(ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    checked_hypotheses(ctx, r)?;
    let rep = ktilde_low_degree(&ctx.ideal, &ctx.bounds)?;
    r.section("low degrees");
    let rows = rep.checks.iter().map(|(n, j, v)| vec![n.to_string(), j.to_string(), dim(v)]).collect();
    r.table("checks", &["n", "j", "dim K~^(j)_n"], rows);
    r.kv("consistent", rep.consistent());
    r.kv("vanishing_below", rep.vanishing_below);
    let target = ctx.note(&rep.surjection_target);
    r.kv(format!("dim H^{}(Y,O)", rep.dimension), target);
    Ok(())
}
