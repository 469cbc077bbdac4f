use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kstab_core::azflag::{delta_p_lower_bound, restricted_s, semistable_via_flags, FlagSpec};
use kstab_core::gitcubic::{apply_coordinate_change, catalog_verdicts, hm_weight, torus_destabilizer, OnePS};
use kstab_core::lattice::{is_nef, Catalog, SurfaceModel};
use kstab_core::localvol::{
    local_global_check, markov_tree, monomial_nvol, nvol_quotient, singularity_budget, wps_volume,
};
use kstab_core::positivity::{verify_zariski, volume, zariski};
use kstab_core::valuative::{
    beta, classify, discrepancies, lct_newton, profile_for, DivisorSpec, ResolutionGraph, StrictTransform,
};
use kstab_core::{Error, Rat};

use crate::parse::{
    format_terms, parse_cubic, parse_divisor, parse_germ, parse_list, parse_matrix, parse_rat, parse_sing,
    poly_terms,
};
use crate::report::{rat, Report};
use crate::reproduce;

#[derive(Parser, Debug)]
#[command(name = "kstab", version, about = "Exact K-stability invariants of log del Pezzo surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Exit with status 1 when the verdict is fail or unstable.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Add approximate decimals next to exact results.
    #[arg(long, global = true)]
    pub decimal: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20)]
    pub seed: u64,
    /// Extra model or flag file (JSON); may be repeated.
    #[arg(long, global = true)]
    pub catalog: Vec<PathBuf>,
    /// Boundary coefficient on the surface, as LABEL=COEFF; may be repeated.
    #[arg(long, global = true)]
    pub boundary: Vec<String>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArg {
    /// Catalog name or alias, or P(a,b,c).
    #[arg(long)]
    pub surface: String,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Single exceptional curve of self-intersection -N (a cone).
    #[arg(long, value_name = "N")]
    pub cone: Option<i64>,
    /// Genus of the cone's exceptional curve.
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// Chain of N (-2)-curves.
    #[arg(long, value_name = "N")]
    pub chain: Option<usize>,
    /// Resolution graph as JSON (inline or @path).
    #[arg(long)]
    pub graph: Option<String>,
    /// Boundary strict transform COEFF@VERTEX[:MULT]; may be repeated.
    #[arg(long = "through")]
    pub through: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Intersection number of two divisors.
    Intersect {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Zariski decomposition with its certificate.
    Zariski {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Volume profile t -> vol(L - tE).
    Volfn {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long, allow_hyphen_values = true)]
        divisor_spec: String,
    },
    /// A, S, beta and delta of a divisor.
    Beta {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long, allow_hyphen_values = true)]
        divisor_spec: String,
    },
    /// Adjunction lower bounds from a catalogued flag.
    DeltaFlag {
        #[arg(long)]
        flag: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// K-semistability via destabilizer search and flag bounds.
    Semistable {
        #[command(flatten)]
        s: SurfaceArg,
        /// Flags to use; defaults to every flag on the surface.
        #[arg(long)]
        flag: Vec<String>,
    },
    /// Discrepancies on a resolution graph.
    Discrep {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Singularity class from a resolution graph.
    Classify {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Log canonical threshold of a plane curve germ.
    Lct {
        #[arg(long)]
        poly: String,
        /// Report the Newton value even when the germ is degenerate.
        #[arg(long)]
        allow_degenerate: bool,
    },
    /// Normalized volume of a quotient singularity or monomial valuation.
    Nvol {
        /// 1/n(a,b), A<k> or smooth.
        #[arg(long)]
        sing: Option<String>,
        /// Monomial valuation weights W1,W2.
        #[arg(long)]
        monomial: Option<String>,
    },
    /// Singularities allowed on a K-semistable degree-d degeneration.
    Budget {
        #[arg(long)]
        degree: u32,
    },
    /// Local-to-global volume check.
    LocalGlobal {
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        volume: Option<String>,
        #[arg(long)]
        sing: Vec<String>,
    },
    /// Markov triples to a mutation depth.
    Markov {
        #[arg(long)]
        depth: u32,
    },
    /// Anticanonical volume of P(a,b,c).
    WpsVol { a: u64, b: u64, c: u64 },
    /// Hilbert-Mumford weight of a cubic form.
    GitWeight {
        #[arg(long)]
        poly: String,
        /// Four integers summing to zero.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Torus destabilizer of a cubic form, or the normal-form table.
    GitDestab {
        #[arg(long)]
        poly: Option<String>,
        /// Coordinate change applied first; rows by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        normal_forms: bool,
    },
    /// Run the reproduction table.
    ReproducePaper {
        /// Only rows of this section.
        #[arg(long)]
        section: Option<String>,
        /// Fault injection: negate the first Gram entry of MODEL.
        #[arg(long, value_name = "MODEL")]
        corrupt_gram: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Show {
        name: String,
        /// Print the declarative file instead of a summary.
        #[arg(long)]
        file: bool,
    },
}

pub struct Ctx {
    pub catalog: Catalog,
    pub boundary: Vec<(String, Rat)>,
    pub seed: u64,
}

pub type CmdResult = Result<Report, String>;

fn err(e: Error) -> String {
    e.to_string()
}

impl Ctx {
    pub fn new(cli: &Cli) -> Result<Ctx, String> {
        let mut catalog = Catalog::builtin().clone();
        for p in &cli.catalog {
            let src = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            catalog = catalog.with_document(&src).map_err(|e| format!("{}: {e}", p.display()))?;
        }
        let boundary = cli
            .boundary
            .iter()
            .map(|b| {
                let (l, c) = b.split_once('=').ok_or_else(|| format!("boundary '{b}' is not LABEL=COEFF"))?;
                Ok((l.trim().to_string(), parse_rat(c)?))
            })
            .collect::<Result<_, String>>()?;
        Ok(Ctx { catalog, boundary, seed: cli.seed })
    }

    pub fn surface(&self, name: &str) -> Result<SurfaceModel, String> {
        let mut m = (*self.catalog.model(name).map_err(err)?).clone();
        for (l, c) in &self.boundary {
            m = m.with_boundary(l, c.clone()).map_err(err)?;
        }
        Ok(m)
    }
}

fn boundary_json(m: &SurfaceModel) -> Value {
    Value::Object(
        m.boundary
            .iter()
            .filter(|b| !b.coefficient.is_zero())
            .map(|b| (b.label.clone(), rat(&b.coefficient)))
            .collect(),
    )
}

fn surface_inputs(r: &mut Report, m: &SurfaceModel) {
    r.input("surface", &m.name);
    if m.boundary.iter().any(|b| !b.coefficient.is_zero()) {
        r.input("boundary", boundary_json(m));
    }
}

/// Named extraction or curve first, otherwise a divisor expression.
pub fn divisor_spec(m: &SurfaceModel, src: &str) -> Result<DivisorSpec, String> {
    DivisorSpec::named(m, src).or_else(|_| parse_divisor(m, src).map(DivisorSpec::Class))
}

pub fn dispatch(cli: &Cli, ctx: &Ctx, argv: &[String]) -> CmdResult {
    let mut r = Report::new(argv);
    match &cli.cmd {
        Cmd::Catalog { action } => catalog_cmd(ctx, action, &mut r)?,
        Cmd::Intersect { s, a, b } => {
            let m = ctx.surface(&s.surface)?;
            surface_inputs(&mut r, &m);
            let (da, db) = (parse_divisor(&m, a)?, parse_divisor(&m, b)?);
            r.input("a", m.format_class(&da)).input("b", m.format_class(&db));
            r.result("intersection", m.intersect(&da, &db).map_err(err)?);
        }
        Cmd::Zariski { s, divisor } => zariski_cmd(ctx, &s.surface, divisor, &mut r)?,
        Cmd::Volfn { s, divisor_spec: d } => {
            let m = ctx.surface(&s.surface)?;
            surface_inputs(&mut r, &m);
            let spec = divisor_spec(&m, d)?;
            r.input("divisor", spec.label());
            let p = profile_for(&m, &spec).map_err(err)?;
            r.result("l_squared", p.l_squared()).result("tau", &p.tau).result("profile", p.report().pieces);
            r.result("integral", p.profile.integrate_all());
            r.result(
                "chambers",
                p.chambers
                    .iter()
                    .map(|c| json!({"from": rat(&c.from), "to": rat(&c.to), "negative_support": c.support()}))
                    .collect::<Vec<_>>(),
            );
        }
        Cmd::Beta { s, divisor_spec: d } => {
            let m = ctx.surface(&s.surface)?;
            surface_inputs(&mut r, &m);
            let spec = divisor_spec(&m, d)?;
            r.input("divisor", spec.label());
            let b = beta(&m, &spec).map_err(err)?;
            r.result("A", &b.a).result("S", &b.s).result("beta", &b.beta).result("delta", &b.delta);
            r.verdict = Some(!b.beta.is_negative());
            if b.beta.is_negative() {
                r.note(format!("beta < 0: {} destabilizes {}", spec.label(), m.name));
            }
            if matches!(spec, DivisorSpec::Class(_)) {
                r.note("raw class: assumed to be a prime divisor with the boundary's coefficient rule");
            }
        }
        Cmd::DeltaFlag { flag, point } => {
            let f = ctx.catalog.flag(flag).map_err(err)?;
            delta_flag_cmd(f, point.as_deref(), &mut r)?;
        }
        Cmd::Semistable { s, flag } => {
            let m = ctx.surface(&s.surface)?;
            surface_inputs(&mut r, &m);
            let flags: Vec<&FlagSpec> = if flag.is_empty() {
                ctx.catalog.flags_for(&m.name).into_iter().filter(|f| flag_fits(f, &m)).collect()
            } else {
                flag.iter().map(|n| ctx.catalog.flag(n).map_err(err)).collect::<Result<_, _>>()?
            };
            r.input("flags", flags.iter().map(|f| f.name.clone()).collect::<Vec<_>>());
            let rep = semistable_via_flags(&m, &flags).map_err(err)?;
            r.result("semistable", rep.semistable);
            if let Some((d, b)) = &rep.destabilizer {
                r.result("destabilizer", json!({"divisor": d, "beta": rat(b)}));
            }
            r.result(
                "classes",
                rep.classes
                    .iter()
                    .map(|c| {
                        json!({"point_class": c.point_class, "flag": c.best.flag, "point": c.best.point,
                               "bound": rat(&c.best.bound)})
                    })
                    .collect::<Vec<_>>(),
            );
            for a in rep.assumptions {
                r.note(a);
            }
            r.verdict = Some(rep.semistable);
        }
        Cmd::Discrep { g } => {
            let graph = graph_from(g)?;
            r.input("graph", &graph);
            let a = discrepancies(&graph).map_err(err)?;
            r.result(
                "discrepancies",
                graph.vertices.iter().zip(&a).map(|(v, a)| json!({"vertex": v.label, "a": rat(a)})).collect::<Vec<_>>(),
            );
        }
        Cmd::Classify { g } => {
            let graph = graph_from(g)?;
            r.input("graph", &graph);
            let c = classify(&graph).map_err(err)?;
            r.result("class", c.kind.to_string()).result("witness", &c.witness);
            r.result("discrepancies", &c.discrepancies);
        }
        Cmd::Lct { poly, allow_degenerate } => {
            let f = parse_germ(poly)?;
            r.input("poly", format_terms(&poly_terms(poly)?));
            r.result("newton_vertices", f.newton_vertices());
            r.result("nondegenerate", f.is_newton_nondegenerate());
            r.result("lct", lct_newton(&f, *allow_degenerate).map_err(err)?);
            if !f.is_newton_nondegenerate() {
                r.note("degenerate germ: the Newton value is only an upper bound for the lct");
            }
        }
        Cmd::Nvol { sing, monomial } => match (sing, monomial) {
            (Some(s), None) => {
                let q = parse_sing(s)?;
                r.input("sing", q.tag());
                r.result("order", q.normal_form().0).result("nvol", nvol_quotient(&q).map_err(err)?);
            }
            (None, Some(w)) => {
                let w = parse_list(w, parse_rat)?;
                let [a, b] = w.as_slice() else { return Err("--monomial takes two weights".into()) };
                r.input("weights", [a, b]);
                r.result("nvol", monomial_nvol(a, b).map_err(err)?);
            }
            _ => return Err("give exactly one of --sing and --monomial".into()),
        },
        Cmd::Budget { degree } => {
            r.input("degree", degree);
            let b = singularity_budget(*degree).map_err(err)?;
            r.result("max_order", 9 / degree);
            r.result("allowed", b.iter().map(|s| s.tag()).collect::<Vec<_>>());
        }
        Cmd::LocalGlobal { surface, volume: vol, sing } => {
            let (v, sings) = match (surface, vol) {
                (Some(s), None) => {
                    let m = ctx.surface(s)?;
                    surface_inputs(&mut r, &m);
                    let l = m.log_anticanonical();
                    (m.intersect(&l, &l).map_err(err)?, m.sings.iter().map(|p| p.sing.clone()).collect::<Vec<_>>())
                }
                (None, Some(v)) => (parse_rat(v)?, sing.iter().map(|s| parse_sing(s)).collect::<Result<_, _>>()?),
                _ => return Err("give exactly one of --surface and --volume".into()),
            };
            let sings = if sings.is_empty() { vec![kstab_core::localvol::QuotientSing::smooth()] } else { sings };
            r.input("volume", &v).input("sings", sings.iter().map(|s| s.tag()).collect::<Vec<_>>());
            let lg = local_global_check(&v, &sings).map_err(err)?;
            r.result("min_nvol", &lg.min_nvol).result("worst", &lg.worst).result("bound", &lg.bound);
            r.result("margin", &lg.margin).result("pass", lg.pass);
            r.verdict = Some(lg.pass);
        }
        Cmd::Markov { depth } => {
            r.input("depth", depth);
            let t = markov_tree(*depth).map_err(err)?;
            r.result("count", t.len());
            r.result("triples", t.iter().map(|t| t.as_array()).collect::<Vec<_>>());
        }
        Cmd::WpsVol { a, b, c } => {
            r.input("weights", [a, b, c]);
            r.result("volume", wps_volume(*a, *b, *c).map_err(err)?);
        }
        Cmd::GitWeight { poly, weights } => {
            let f = parse_cubic(poly)?;
            let w = parse_list(weights, |s| s.parse::<i64>().map_err(|e| format!("'{s}': {e}")))?;
            let w: [i64; 4] = w.try_into().map_err(|_| "--weights takes four integers".to_string())?;
            let lam = OnePS::new(w).map_err(err)?;
            r.input("poly", f.to_string()).input("weights", lam.weights);
            let h = hm_weight(&f, &lam);
            r.result("hm_weight", &h).result("destabilizes", h.is_positive());
        }
        Cmd::GitDestab { poly, matrix, normal_forms } => {
            if *normal_forms {
                let v = catalog_verdicts();
                r.result("normal_forms", &v);
                r.note("smooth-form verdicts rely on the literature for the quantifier over coordinates");
            } else {
                let src = poly.as_ref().ok_or("give --poly or --normal-forms")?;
                let mut f = parse_cubic(src)?;
                r.input("poly", f.to_string());
                if let Some(ms) = matrix {
                    let m = parse_matrix(ms)?;
                    f = apply_coordinate_change(&f, &m).map_err(err)?;
                    r.input("matrix", &m);
                    r.result("transformed", f.to_string());
                }
                let d = torus_destabilizer(&f);
                r.result("torus_semistable", d.is_none());
                if let Some(lam) = d {
                    r.result("destabilizer", lam.weights).result("hm_weight", hm_weight(&f, &lam));
                }
                r.verdict = Some(d.is_none());
            }
        }
        Cmd::ReproducePaper { section, corrupt_gram } => {
            reproduce::run(ctx, section.as_deref(), corrupt_gram.as_deref(), &mut r)?;
        }
    }
    Ok(r)
}

fn flag_fits(f: &FlagSpec, m: &SurfaceModel) -> bool {
    f.boundary.iter().all(|b| m.boundary_coefficient(&b.label) == b.coefficient)
        && m.boundary
            .iter()
            .all(|b| b.coefficient.is_zero() || f.boundary.iter().any(|s| s.label == b.label))
}

fn catalog_cmd(ctx: &Ctx, action: &CatalogCmd, r: &mut Report) -> Result<(), String> {
    let cat = &ctx.catalog;
    match action {
        CatalogCmd::List => {
            let mut entries = cat.entries();
            entries.sort_by(|a, b| a.name.cmp(&b.name));
            r.result("models", &entries);
            r.result(
                "flags",
                cat.flags().map(|f| json!({"name": f.name, "surface": f.surface, "divisor": f.divisor})).collect::<Vec<_>>(),
            );
        }
        CatalogCmd::Show { name, file } => {
            if let Ok(f) = cat.flag(name) {
                r.input("flag", name);
                r.result("flag", f);
                return Ok(());
            }
            let m = cat.model(name).map_err(err)?;
            r.input("model", name);
            if *file {
                r.result("file", m.to_file());
                return Ok(());
            }
            let l = m.log_anticanonical();
            r.result("name", &m.name).result("aliases", &m.aliases).result("basis", &m.basis);
            r.result("gram", &m.gram).result("canonical", m.format_class(&m.canonical));
            r.result("degree", m.intersect(&l, &l).map_err(err)?);
            r.result("negative_curves", m.neg_curves.len());
            r.result("other_generators", m.extra_generators.iter().map(|c| c.label.clone()).collect::<Vec<_>>());
            r.result("named_curves", m.named_curves.iter().map(|c| c.label.clone()).collect::<Vec<_>>());
            r.result(
                "sings",
                m.sings.iter().map(|s| json!({"location": s.location, "type": s.sing.tag()})).collect::<Vec<_>>(),
            );
            r.result("point_classes", &m.point_classes);
            r.result("extractions", m.extractions.iter().map(|x| x.label.clone()).collect::<Vec<_>>());
            r.result("flags", cat.flags_for(&m.name).iter().map(|f| f.name.clone()).collect::<Vec<_>>());
        }
    }
    Ok(())
}

fn zariski_cmd(ctx: &Ctx, surface: &str, divisor: &str, r: &mut Report) -> Result<(), String> {
    let m = ctx.surface(surface)?;
    surface_inputs(r, &m);
    let d = parse_divisor(&m, divisor)?;
    r.input("divisor", m.format_class(&d));
    match zariski(&m, &d) {
        Ok(z) => {
            let checked = verify_zariski(&m, &d, &z);
            r.result("positive", m.format_class(&z.positive));
            r.result(
                "negative",
                z.negative.iter().map(|(l, c)| json!({"curve": l, "coefficient": rat(c)})).collect::<Vec<_>>(),
            );
            r.result("gram_certificate", &z.gram_cert);
            r.result("volume", volume(&m, &d).map_err(err)?);
            r.result("positive_is_nef", is_nef(&m, &z.positive));
            r.result("certificate_verified", checked.is_ok());
            r.verdict = Some(checked.is_ok());
        }
        Err(Error::NotPseudoEffective(c)) => {
            r.result("pseudoeffective", false).result("certificate", c.to_string()).result("volume", Rat::zero());
            r.verdict = Some(false);
        }
        Err(e) => return Err(err(e)),
    }
    Ok(())
}

fn delta_flag_cmd(f: &FlagSpec, point: Option<&str>, r: &mut Report) -> Result<(), String> {
    r.input("flag", &f.name).input("surface", &f.surface).input("divisor", &f.divisor);
    if !f.boundary.is_empty() {
        r.input("boundary", f.boundary.iter().map(|b| (b.label.clone(), rat(&b.coefficient))).collect::<serde_json::Map<_, _>>());
    }
    let pts: Vec<&str> = match point {
        Some(p) => vec![p],
        None => f.points.iter().map(|p| p.label.as_str()).collect(),
    };
    let se = f.s_e();
    r.result("A", &f.a_e).result("S", &se).result("A_over_S", &f.a_e / &se).result("tau", &f.tau);
    let mut rows = Vec::new();
    for p in pts {
        let b = delta_p_lower_bound(f, p).map_err(err)?;
        debug_assert_eq!(b.s_w, restricted_s(f, p).map_err(err)?);
        rows.push(json!({"point": p, "ord_different": rat(&f.different_at(p)), "S_W": rat(&b.s_w),
                         "second": rat(&(&b.numerator / &b.s_w)), "bound": rat(&b.bound)}));
    }
    r.result("points", rows);
    if !f.plt_asserted {
        r.note("plt type of the flag divisor is not asserted");
    }
    Ok(())
}

fn graph_from(g: &GraphArgs) -> Result<ResolutionGraph, String> {
    let mut graph = match (g.cone, g.chain, &g.graph) {
        (Some(n), None, None) => {
            if n <= 0 {
                return Err("--cone needs a positive N".into());
            }
            ResolutionGraph::single("E", g.genus, -n)
        }
        (None, Some(n), None) if n > 0 => ResolutionGraph::a_chain(n),
        (None, None, Some(src)) => {
            let text = match src.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
                None => src.clone(),
            };
            serde_json::from_str(&text).map_err(|e| format!("graph: {e}"))?
        }
        _ => return Err("give exactly one of --cone, --chain (N > 0) and --graph".into()),
    };
    for t in &g.through {
        let (c, rest) = t.split_once('@').ok_or_else(|| format!("'{t}' is not COEFF@VERTEX[:MULT]"))?;
        let (v, mult) = match rest.split_once(':') {
            Some((v, k)) => (v, k.parse::<u32>().map_err(|e| format!("'{t}': {e}"))?),
            None => (rest, 1),
        };
        let v: usize = v.parse().map_err(|e| format!("'{t}': {e}"))?;
        if v >= graph.vertices.len() {
            return Err(format!("'{t}': no vertex {v}"));
        }
        graph = graph.with_strict_transform(StrictTransform { coefficient: parse_rat(c)?, incidences: vec![(v, mult)] });
    }
    Ok(graph)
}
