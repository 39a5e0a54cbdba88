use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use geomaug_core::codec::{self, ImageFormat};
use geomaug_core::{Error, Pipeline, PipelineSpec};
use rayon::prelude::*;

pub struct Job {
    pub spec: PipelineSpec,
    pub input: PathBuf,
    pub out: PathBuf,
    pub multiplier: u64,
    pub jobs: Option<usize>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub classes: usize,
    pub processed: usize,
    pub skipped: usize,
    pub emitted: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "classes {}, processed {}, skipped {}, emitted {}",
            self.classes, self.processed, self.skipped, self.emitted
        )
    }
}

#[derive(Debug)]
struct Source {
    class: String,
    file_name: String,
    /// Output name stem, unique within the class.
    stem: String,
    ordinal: u64,
}

#[derive(serde::Serialize)]
struct Row {
    source: String,
    output: String,
    class: String,
    trace: String,
    seed: u64,
    index: u64,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn sorted_entries(dir: &Path) -> Result<Vec<(String, bool)>, Error> {
    let mut entries = Vec::new();
    for entry in fs::read_dir(dir).map_err(io(dir))? {
        let entry = entry.map_err(io(dir))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') {
            continue;
        }
        let is_dir = entry.file_type().map_err(io(dir))?.is_dir();
        entries.push((name, is_dir));
    }
    entries.sort();
    Ok(entries)
}

/// Lists class directories and their files in lexicographic order and assigns
/// ordinals across the whole tree.
fn scan(root: &Path) -> Result<(Vec<String>, Vec<Source>), Error> {
    let mut classes = Vec::new();
    let mut sources = Vec::new();
    for (name, is_dir) in sorted_entries(root)? {
        if !is_dir {
            log::warn!("ignoring {}: not inside a class directory", root.join(&name).display());
            continue;
        }
        let mut stems = HashSet::new();
        for (file_name, is_dir) in sorted_entries(&root.join(&name))? {
            if is_dir {
                log::warn!("ignoring nested directory {}", root.join(&name).join(&file_name).display());
                continue;
            }
            let base = Path::new(&file_name)
                .file_stem()
                .map_or_else(|| file_name.clone(), |s| s.to_string_lossy().into_owned());
            let stem = if stems.contains(&base) { file_name.replace('.', "_") } else { base };
            stems.insert(stem.clone());
            sources.push(Source {
                class: name.clone(),
                file_name,
                stem,
                ordinal: sources.len() as u64,
            });
        }
        classes.push(name);
    }
    if classes.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "{} has no class subdirectories",
            root.display()
        )));
    }
    Ok((classes, sources))
}

fn process(job: &Job, pipeline: &Pipeline, src: &Source) -> Result<Option<Vec<Row>>, Error> {
    let path = job.input.join(&src.class).join(&src.file_name);
    let img = match codec::decode(&path) {
        Ok(img) => img,
        Err(e @ Error::Codec { .. }) => {
            log::warn!("skipping {e}");
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let mut rows = Vec::with_capacity(job.multiplier as usize);
    for variant in 0..job.multiplier {
        let index = src.ordinal * job.multiplier + variant;
        let (out, trace) = pipeline.apply_traced(&img, index)?;
        let output = format!("{}/{}_{}.png", src.class, src.stem, variant);
        codec::encode(&out.to_u8(), job.out.join(&output), ImageFormat::Png)?;
        rows.push(Row {
            source: format!("{}/{}", src.class, src.file_name),
            output,
            class: src.class.clone(),
            trace: trace.to_string(),
            seed: pipeline.seed(),
            index,
        });
    }
    Ok(Some(rows))
}

pub fn run(job: &Job) -> anyhow::Result<Summary> {
    let pipeline = Pipeline::new(job.spec.clone())?;
    let (classes, sources) = scan(&job.input)?;
    for class in &classes {
        let dir = job.out.join(class);
        fs::create_dir_all(&dir).map_err(io(&dir))?;
    }
    let config_path = job.out.join("effective_config.json");
    fs::write(&config_path, job.spec.to_json() + "\n").map_err(io(&config_path))?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = job.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let results: Vec<Option<Vec<Row>>> =
        pool.install(|| sources.par_iter().map(|s| process(job, &pipeline, s)).collect::<Result<_, _>>())?;

    let mut summary = Summary {
        classes: classes.len(),
        ..Summary::default()
    };
    let mut rows: Vec<Row> = Vec::new();
    for r in results {
        match r {
            Some(r) => {
                summary.processed += 1;
                rows.extend(r);
            }
            None => summary.skipped += 1,
        }
    }
    rows.sort_by_key(|r| r.index);
    summary.emitted = rows.len();

    let manifest = job.out.join("manifest.csv");
    let mut writer = csv::Writer::from_path(&manifest).map_err(Error::from)?;
    if rows.is_empty() {
        writer
            .write_record(["source", "output", "class", "trace", "seed", "index"])
            .map_err(Error::from)?;
    }
    for row in &rows {
        writer.serialize(row).map_err(Error::from)?;
    }
    writer.flush().map_err(io(&manifest))?;
    log::info!("{summary}");
    Ok(summary)
}
