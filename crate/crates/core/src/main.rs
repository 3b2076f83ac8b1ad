use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sgh::distance::{
    algebraic_distance, build_girth_transformed_distance_graph, certify_sp_complete,
    f_g_transform, lift_certificate, negative_cycle_pairs, Certificate,
};
use sgh::edc::{edc, edc_weighted, spc};
use sgh::hom::{find_homomorphism, no_hom_filter, random_sp_signed_graph, verify_homomorphism, GirthSpec, Homomorphism};
use sgh::io::{
    certificate_from_json, certificate_to_json, signed_graph_from_json, signed_graph_to_dot,
    signed_graph_to_json, weighted_graph_from_json, weighted_graph_to_dot, weighted_graph_to_json,
    CertificateJson,
};
use sgh::signed::{switch, switching_equivalent, walk_girths, SignedClass};
use sgh::tube::{build_twisted_tube, verify_tube_certificate};
use sgh::weighted::{enumerate_lg, is_g_wide, triple_is_g_wide_closed_form, weighted_walk_girths, Triple};
use sgh::{Error, SignedGraph, Switching, WeightedSignedGraph};

#[derive(Parser)]
#[command(name = "sgh", version, about = "Signed graph homomorphism toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    /// Suppress progress traces on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "SGH_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    C10,
    C11,
}

#[derive(Subcommand)]
enum Cmd {
    /// The four walk-girths of a signed or weighted graph.
    Girths {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weighted: bool,
    },
    /// Switch a signed graph at a vertex set.
    Switch {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Decide switching equivalence of two signatures on the same multigraph.
    Eqv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Extended Double Cover.
    Edc {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weighted: bool,
    },
    /// Signed projective cube SPC(k).
    Spc {
        #[arg(long)]
        k: u32,
    },
    /// The twisted tube (TT(g), J), optionally with its verified certificate.
    Tube {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        verify: bool,
        /// Where to write the certificate when verifying.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test g-wideness.
    Wide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        weighted: bool,
    },
    /// Test one triple, or list L_g.
    Triples {
        #[arg(long)]
        g: u64,
        #[arg(long, allow_hyphen_values = true, requires_all = ["q", "r"])]
        p: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
        /// Only triples with all entries positive.
        #[arg(long)]
        positive: bool,
    },
    /// Algebraic distance of a pair, or the girth-transformed distance graph.
    Dist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long, requires = "v")]
        u: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
    },
    /// Search for an SP-completeness certificate.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a certificate for (B, g) to (EDC(B), g + 1).
    Lift {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a homomorphism.
    Hom {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        tgt: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Random signed partial 2-tree meeting the girths of C_{-g}.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        g: u64,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
    },
    /// Re-emit a graph file in the chosen format.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weighted: bool,
    },
    /// Revalidate a certificate, or a homomorphism witness against its graphs.
    Verify {
        #[arg(long, conflicts_with = "witness")]
        cert: Option<PathBuf>,
        #[arg(long, requires_all = ["src", "tgt"])]
        witness: Option<PathBuf>,
        #[arg(long)]
        src: Option<PathBuf>,
        #[arg(long)]
        tgt: Option<PathBuf>,
    },
}

/// What a subcommand produced: text for stdout and whether the answer was positive.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn yes(text: String) -> Self {
        Outcome { text, ok: true }
    }

    fn verdict(text: String, ok: bool) -> Self {
        Outcome { text, ok }
    }
}

struct Ctx {
    emit: Emit,
    quiet: bool,
}

impl Ctx {
    fn trace(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn signed(&self, g: &SignedGraph) -> String {
        match self.emit {
            Emit::Json => signed_graph_to_json(g),
            Emit::Dot => signed_graph_to_dot(g),
        }
    }

    fn weighted(&self, g: &WeightedSignedGraph) -> String {
        match self.emit {
            Emit::Json => weighted_graph_to_json(g),
            Emit::Dot => weighted_graph_to_dot(g),
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_signed(path: &Path) -> Result<SignedGraph, Error> {
    signed_graph_from_json(&read(path)?)
}

fn load_weighted(path: &Path) -> Result<WeightedSignedGraph, Error> {
    weighted_graph_from_json(&read(path)?)
}

fn certificate_summary(c: &Certificate, out: Option<&Path>) -> Value {
    json!({
        "g": c.g,
        "order": c.base.n(),
        "dist_edges": c.dist_graph.edges().len(),
        "triangles": c.tset.len(),
        "out": out.map(|p| p.display().to_string()),
    })
}

/// Writes the certificate to `out` and returns a summary, or returns the certificate itself.
fn emit_certificate(c: &Certificate, out: Option<&Path>) -> Result<String, Error> {
    match out {
        Some(path) => {
            write(path, &certificate_to_json(c))?;
            Ok(certificate_summary(c, Some(path)).to_string())
        }
        None => Ok(certificate_to_json(c)),
    }
}

fn run(cmd: Cmd, ctx: &Ctx) -> Result<Outcome, Error> {
    Ok(match cmd {
        Cmd::Girths { input, weighted } => {
            let v = if weighted {
                weighted_walk_girths(&load_weighted(&input)?)?
            } else {
                walk_girths(&load_signed(&input)?)?
            };
            Outcome::yes(serde_json::to_string(&v).unwrap())
        }
        Cmd::Switch { input, set } => {
            let g = load_signed(&input)?;
            Outcome::yes(ctx.signed(&switch(&g, &Switching::new(set))?))
        }
        Cmd::Eqv { a, b } => {
            let x = switching_equivalent(&load_signed(&a)?, &load_signed(&b)?)?;
            let text = json!({ "equivalent": x.is_some(), "switching": x }).to_string();
            Outcome::verdict(text, x.is_some())
        }
        Cmd::Edc { input, weighted } => {
            if weighted {
                Outcome::yes(ctx.weighted(&edc_weighted(&load_weighted(&input)?)))
            } else {
                Outcome::yes(ctx.signed(&edc(&load_signed(&input)?)))
            }
        }
        Cmd::Spc { k } => Outcome::yes(ctx.signed(&spc(k)?)),
        Cmd::Tube { g, verify, out } => {
            if !verify {
                return Ok(Outcome::yes(ctx.signed(&build_twisted_tube(g)?)));
            }
            ctx.trace(&format!("verifying the TT({g}) certificate"));
            let (cert, report) = verify_tube_certificate(g)?;
            if let Some(path) = &out {
                write(path, &certificate_to_json(&cert))?;
            }
            let mut summary = certificate_summary(&cert, out.as_deref());
            summary["sweep"] = serde_json::to_value(&report).unwrap();
            Outcome::yes(summary.to_string())
        }
        Cmd::Wide { input, g, weighted } => {
            let (wide, girths) = if weighted {
                let w = load_weighted(&input)?;
                (is_g_wide(&w, g)?, weighted_walk_girths(&w)?)
            } else {
                let s = load_signed(&input)?;
                (is_g_wide(&s, g)?, walk_girths(&s)?)
            };
            let text = json!({ "g": g, "wide": wide, "girths": girths }).to_string();
            Outcome::verdict(text, wide)
        }
        Cmd::Triples { g, p, q, r, positive } => match (p, q, r) {
            (Some(p), Some(q), Some(r)) => {
                let t = Triple::new(p, q, r, g);
                let wide = triple_is_g_wide_closed_form(&t)?;
                let text = json!({ "g": g, "triple": [p, q, r], "wide": wide }).to_string();
                Outcome::verdict(text, wide)
            }
            _ => {
                let list: Vec<[i64; 3]> = enumerate_lg(g)?
                    .into_iter()
                    .filter(|t| !positive || (t.p > 0 && t.q > 0 && t.r > 0))
                    .map(|t| [t.p, t.q, t.r])
                    .collect();
                Outcome::yes(json!({ "g": g, "count": list.len(), "triples": list }).to_string())
            }
        },
        Cmd::Dist { input, g, u, v } => {
            let base = load_signed(&input)?;
            match (u, v, g) {
                (Some(u), Some(v), g) => {
                    let ad = algebraic_distance(&base, u, v)?;
                    let f = g.map(|g| f_g_transform(ad, g)).transpose()?;
                    Outcome::yes(json!({ "u": u, "v": v, "ad": ad, "f_g": f }).to_string())
                }
                (_, _, Some(g)) => {
                    let pairs = negative_cycle_pairs(&base, g)?;
                    Outcome::yes(ctx.weighted(&build_girth_transformed_distance_graph(&base, &pairs, g)?))
                }
                _ => return Err(Error::OutOfRange("dist needs --u and --v, or --g".into())),
            }
        }
        Cmd::Certify { input, g, out } => {
            let base = load_signed(&input)?;
            ctx.trace(&format!("pruning the maximal {g}-candidate on {} vertices", base.n()));
            match certify_sp_complete(&base, g)? {
                Some(c) => Outcome::yes(emit_certificate(&c, out.as_deref())?),
                None => Outcome::verdict(json!({ "g": g, "certificate": null, "result": "no certificate" }).to_string(), false),
            }
        }
        Cmd::Lift { cert, out } => {
            let c = certificate_from_json(&read(&cert)?)?;
            let lifted = lift_certificate(&c)?;
            Outcome::yes(emit_certificate(&lifted, out.as_deref())?)
        }
        Cmd::Hom { src, tgt, witness } => {
            let (s, t) = (load_signed(&src)?, load_signed(&tgt)?);
            let filter = no_hom_filter(&s, &t)?;
            let h = if filter { find_homomorphism(&s, &t)? } else { None };
            if let (Some(path), Some(h)) = (&witness, &h) {
                write(path, &serde_json::to_string(h).unwrap())?;
            }
            let text = json!({
                "filter": filter,
                "homomorphism": h.is_some(),
                "witness": if witness.is_none() { serde_json::to_value(&h).unwrap() } else { Value::Null },
            })
            .to_string();
            Outcome::verdict(text, h.is_some())
        }
        Cmd::Gen { n, seed, g, class } => {
            let mut spec = GirthSpec::matching(g);
            if let Some(c) = class {
                spec.class = match c {
                    ClassArg::C10 => SignedClass::C10,
                    ClassArg::C11 => SignedClass::C11,
                };
            }
            Outcome::yes(ctx.signed(&random_sp_signed_graph(n, seed, spec)?))
        }
        Cmd::Export { input, weighted } => {
            if weighted {
                Outcome::yes(ctx.weighted(&load_weighted(&input)?))
            } else {
                Outcome::yes(ctx.signed(&load_signed(&input)?))
            }
        }
        Cmd::Verify { cert, witness, src, tgt } => {
            if let Some(path) = cert {
                let text = read(&path)?;
                let parsed: CertificateJson =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                match Certificate::try_from(parsed.clone()) {
                    Ok(c) => {
                        let canonical = CertificateJson::from(&c) == parsed;
                        let mut s = certificate_summary(&c, None);
                        s["valid"] = json!(true);
                        s["canonical"] = json!(canonical);
                        Outcome::yes(s.to_string())
                    }
                    Err(e) => Outcome::verdict(json!({ "valid": false, "reason": e.to_string() }).to_string(), false),
                }
            } else if let (Some(w), Some(src), Some(tgt)) = (witness, src, tgt) {
                let h: Homomorphism =
                    serde_json::from_str(&read(&w)?).map_err(|e| Error::Parse(e.to_string()))?;
                let ok = verify_homomorphism(&h, &load_signed(&src)?, &load_signed(&tgt)?)?;
                Outcome::verdict(json!({ "valid": ok }).to_string(), ok)
            } else {
                return Err(Error::OutOfRange("verify needs --cert, or --witness with --src and --tgt".into()));
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // a second initialisation only happens in tests embedding the binary logic
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let ctx = Ctx {
        emit: cli.emit,
        quiet: cli.quiet,
    };
    match run(cli.cmd, &ctx) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
