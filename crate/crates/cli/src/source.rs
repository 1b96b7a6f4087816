//! Where a command gets its family from.

use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use metadice::export::{family_from_json, parse_tables};
use metadice::{generate, AssignmentStack, DiceFamily, Preset};

/// Families deeper than this need `--allow-large`.
pub const DEPTH_CEILING: usize = 8;

#[derive(Args, Debug, Default)]
pub struct FamilyArgs {
    /// paper-1, paper-2, paper-3, uniform (with --depth) or uniform-<k>.
    #[arg(long, conflicts_with = "stack")]
    pub preset: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Assignment-stack file. A preset name is accepted when no such file exists.
    #[arg(long)]
    pub stack: Option<PathBuf>,
    /// How many times each face value appears on a die.
    #[arg(long, default_value_t = 2)]
    pub multiplicity: u32,
    /// Read a family (JSON or table text) from a file.
    #[arg(long, conflicts_with_all = ["preset", "stack", "depth", "stdin"])]
    pub input: Option<PathBuf>,
    /// Read a family (JSON or table text) from standard input.
    #[arg(long, conflicts_with_all = ["preset", "stack", "depth"])]
    pub stdin: bool,
    /// Lift the depth ceiling of 8.
    #[arg(long)]
    pub allow_large: bool,
}

fn parse_family_text(text: &str) -> Result<DiceFamily> {
    if text.trim_start().starts_with('{') {
        Ok(family_from_json(text)?)
    } else {
        Ok(parse_tables(text)?)
    }
}

fn resolve_preset(name: &str, depth: Option<usize>) -> Result<Preset> {
    if name == "uniform" {
        let k = depth.ok_or_else(|| anyhow!("--preset uniform requires --depth"))?;
        if k == 0 {
            bail!("depth must be at least 1");
        }
        return Ok(Preset::Uniform(k));
    }
    let preset: Preset = name.parse()?;
    if let Some(k) = depth {
        if k != preset.depth() {
            bail!(
                "preset {preset} has depth {}, but --depth {k} was given",
                preset.depth()
            );
        }
    }
    Ok(preset)
}

fn is_preset_name(s: &str) -> bool {
    s == "uniform" || s.parse::<Preset>().is_ok()
}

impl FamilyArgs {
    fn check_depth(&self, depth: usize) -> Result<()> {
        if depth > DEPTH_CEILING && !self.allow_large {
            bail!(
                "depth {depth} exceeds the ceiling of {DEPTH_CEILING} ({} dice); pass --allow-large to proceed",
                3u64.pow(depth as u32)
            );
        }
        Ok(())
    }

    fn stack(&self) -> Result<AssignmentStack> {
        if let Some(path) = &self.stack {
            let as_text = path.to_string_lossy();
            if !Path::new(path).exists() && is_preset_name(&as_text) {
                return self.preset_stack(&as_text);
            }
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading stack file {}", path.display()))?;
            let stack = AssignmentStack::parse(&text)
                .with_context(|| format!("stack file {}", path.display()))?;
            if let Some(k) = self.depth {
                if k != stack.depth() {
                    bail!(
                        "stack file has {} levels, but --depth {k} was given",
                        stack.depth()
                    );
                }
            }
            return Ok(stack);
        }
        match (&self.preset, self.depth) {
            (Some(name), _) => self.preset_stack(name),
            (None, Some(_)) => self.preset_stack("uniform"),
            (None, None) => {
                bail!("no family given: use --preset, --stack, --depth, --input or --stdin")
            }
        }
    }

    fn preset_stack(&self, name: &str) -> Result<AssignmentStack> {
        let preset = resolve_preset(name, self.depth)?;
        self.check_depth(preset.depth())?;
        Ok(preset.stack()?)
    }

    pub fn load(&self) -> Result<DiceFamily> {
        let text = if let Some(path) = &self.input {
            Some(
                std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?,
            )
        } else if self.stdin {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Some(buf)
        } else {
            None
        };
        if let Some(text) = text {
            let family = parse_family_text(&text)?;
            self.check_depth(family.depth())?;
            return Ok(family);
        }
        let stack = self.stack()?;
        self.check_depth(stack.depth())?;
        Ok(generate(&stack, self.multiplicity)?)
    }
}
