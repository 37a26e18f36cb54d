use morphic_core::{Error, Morphism, Result};
use serde_json::{json, Map, Value};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Eigenvalues,
    Coboundaries,
    Aperiodic,
    Recognizable,
    Weakmix,
    Dimension,
    Derive,
    Info,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Eigenvalues,
        Command::Coboundaries,
        Command::Aperiodic,
        Command::Recognizable,
        Command::Weakmix,
        Command::Dimension,
        Command::Derive,
        Command::Info,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Eigenvalues => "eigenvalues",
            Command::Coboundaries => "coboundaries",
            Command::Aperiodic => "aperiodic",
            Command::Recognizable => "recognizable",
            Command::Weakmix => "weakmix",
            Command::Dimension => "dimension",
            Command::Derive => "derive",
            Command::Info => "info",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Precondition(format!("unknown format `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_window: usize,
    /// Depth of the general Δ computation; `None` means twice the alphabet size.
    pub fallback_depth: Option<usize>,
    pub assume_recognizable: bool,
    pub format: Format,
    /// Letter for `derive`; the seed letter of the fixed point when absent.
    pub letter: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_window: 16,
            fallback_depth: None,
            assume_recognizable: false,
            format: Format::Text,
            letter: None,
        }
    }
}

/// A fully validated request: σ, the optional coding τ on the alphabet of σ, and options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub sigma: Morphism,
    pub tau: Option<Morphism>,
    pub command: Command,
    pub options: Options,
}

impl JobSpec {
    /// τ, or the identity on the alphabet of σ.
    pub fn tau_or_identity(&self) -> Morphism {
        self.tau
            .clone()
            .unwrap_or_else(|| Morphism::identity(self.sigma.domain()))
    }

    /// The structured form accepted by [`parse_input`].
    pub fn to_json(&self) -> Value {
        let rules = |m: &Morphism| -> Value { m.render().lines().map(Value::from).collect() };
        json!({
            "sigma": rules(&self.sigma),
            "tau": self.tau.as_ref().map_or(Value::Null, rules),
            "command": self.command.name(),
            "options": {
                "max_window": self.options.max_window,
                "fallback_depth": self.options.fallback_depth,
                "assume_recognizable": self.options.assume_recognizable,
                "format": self.options.format.to_string(),
                "letter": self.options.letter,
            },
        })
    }
}

fn sigma_from_text(text: &str) -> Result<Morphism> {
    let s = Morphism::parse_substitution(text)?;
    Ok(s)
}

/// τ must be defined on the alphabet of σ; rules may come in any order.
pub fn tau_from_text(text: &str, sigma: &Morphism) -> Result<Morphism> {
    Morphism::parse_with_domain(text, sigma.domain())
}

fn rules_text(v: &Value, key: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Array(items) => items
            .iter()
            .map(|x| {
                x.as_str().map(String::from).ok_or_else(|| {
                    Error::Precondition(format!("`{key}` must list rules as strings"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(|lines| lines.join("\n")),
        _ => Err(Error::Precondition(format!(
            "`{key}` must be a string or a list of rules"
        ))),
    }
}

fn compose_all(ms: &[Morphism]) -> Result<Morphism> {
    let mut it = ms.iter().rev();
    let mut acc = it
        .next()
        .ok_or_else(|| Error::Precondition("empty morphism sequence".into()))?
        .clone();
    for m in it {
        acc = Morphism::compose(m, &acc)?;
    }
    Ok(acc)
}

fn sequence(v: &Value, key: &str, domain: Option<&Morphism>) -> Result<Vec<Morphism>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Precondition(format!("`{key}` must be a list of morphisms")))?;
    let mut out: Vec<Morphism> = Vec::new();
    for item in items {
        let text = rules_text(item, key)?;
        let m = match domain.or(out.first()) {
            Some(d) => Morphism::parse_with_domain(&text, d.domain())?,
            None => Morphism::parse(&text)?,
        };
        out.push(m);
    }
    Ok(out)
}

fn options_from(v: Option<&Value>, base: Options) -> Result<Options> {
    let Some(v) = v else { return Ok(base) };
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Precondition("`options` must be an object".into()))?;
    let mut o = base;
    let bad = |k: &str| Error::Precondition(format!("invalid value for option `{k}`"));
    for (k, x) in obj {
        match k.as_str() {
            "max_window" => o.max_window = x.as_u64().ok_or_else(|| bad(k))? as usize,
            "fallback_depth" => {
                o.fallback_depth = if x.is_null() {
                    None
                } else {
                    Some(x.as_u64().ok_or_else(|| bad(k))? as usize)
                }
            }
            "assume_recognizable" => o.assume_recognizable = x.as_bool().ok_or_else(|| bad(k))?,
            "format" => o.format = x.as_str().ok_or_else(|| bad(k))?.parse()?,
            "letter" => {
                o.letter = if x.is_null() {
                    None
                } else {
                    Some(x.as_str().ok_or_else(|| bad(k))?.to_string())
                }
            }
            _ => return Err(Error::Precondition(format!("unknown option `{k}`"))),
        }
    }
    Ok(o)
}

fn job_from_json(v: &Value, command: Option<Command>, base: Options) -> Result<JobSpec> {
    let obj: &Map<String, Value> = v
        .as_object()
        .ok_or_else(|| Error::Precondition("job must be a JSON object".into()))?;
    for k in obj.keys() {
        if !["sigma", "tau", "command", "options", "preperiod", "period"].contains(&k.as_str()) {
            return Err(Error::Precondition(format!("unknown key `{k}`")));
        }
    }
    let period = obj
        .get("period")
        .map(|p| sequence(p, "period", None))
        .transpose()?;
    let sigma = match (obj.get("sigma"), &period) {
        (Some(_), Some(_)) => {
            return Err(Error::Precondition(
                "give either `sigma` or `period`".into(),
            ))
        }
        (Some(s), None) => sigma_from_text(&rules_text(s, "sigma")?)?,
        (None, Some(p)) => compose_all(p)?,
        (None, None) => return Err(Error::Precondition("missing `sigma`".into())),
    };
    let tau = match (
        obj.get("tau").filter(|t| !t.is_null()),
        obj.get("preperiod"),
    ) {
        (Some(_), Some(_)) => {
            return Err(Error::Precondition(
                "give either `tau` or `preperiod`".into(),
            ))
        }
        (Some(t), None) => Some(tau_from_text(&rules_text(t, "tau")?, &sigma)?),
        (None, Some(p)) => Some(compose_all(&sequence(p, "preperiod", Some(&sigma))?)?),
        (None, None) => None,
    };
    let command = match (command, obj.get("command")) {
        (Some(c), _) => c,
        (None, Some(c)) => c
            .as_str()
            .ok_or_else(|| Error::Precondition("`command` must be a string".into()))?
            .parse()?,
        (None, None) => return Err(Error::Precondition("missing `command`".into())),
    };
    let options = options_from(obj.get("options"), base)?;
    Ok(JobSpec {
        sigma,
        tau,
        command,
        options,
    })
}

/// Reads a job. A document starting with `{` is the structured format; anything else is a
/// substitution in the text format, with the command and options supplied by the caller.
pub fn parse_input(text: &str, command: Option<Command>, options: Options) -> Result<JobSpec> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        return job_from_json(&v, command, options);
    }
    let command = command.ok_or_else(|| Error::Precondition("no command given".into()))?;
    Ok(JobSpec {
        sigma: sigma_from_text(text)?,
        tau: None,
        command,
        options,
    })
}
