//! JSON job runner for the `hadstar` command line tool.
//!
//! Each command is a [`Job`] registered by name in a [`JobRegistry`]. A job
//! receives a JSON payload and returns a JSON report; failures carry a
//! machine-readable code and map onto process exit statuses.

mod jobs;
pub mod plot;

use hadamard_star::Budget;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use jobs::{
    ClassifyJob, ConstructHyperplaneJob, ConstructLineJob, PlotDataJob, PowerJob, VerifyStarJob,
};

/// Settings shared by every job in one invocation.
#[derive(Clone, Copy, Debug, Default)]
pub struct JobContext {
    pub budget: Budget,
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Domain(#[from] hadamard_star::Error),
}

impl JobError {
    pub fn code(&self) -> &'static str {
        match self {
            JobError::UnknownCommand(_) => "UnknownCommand",
            JobError::Malformed(_) => "MalformedInput",
            JobError::Domain(e) => e.code(),
        }
    }

    /// 1 for domain errors, 2 for malformed input.
    pub fn exit_status(&self) -> i32 {
        match self {
            JobError::Domain(_) => 1,
            JobError::UnknownCommand(_) | JobError::Malformed(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "code": self.code(),
                "message": self.to_string(),
                "exit_status": self.exit_status(),
            }
        })
    }
}

impl From<serde_json::Error> for JobError {
    fn from(e: serde_json::Error) -> Self {
        JobError::Malformed(e.to_string())
    }
}

/// A command with its payload, as stored in a job file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub payload: Value,
}

pub trait Job: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn run(&self, payload: Value, ctx: &JobContext) -> Result<Value, JobError>;
}

pub struct JobRegistry {
    jobs: Vec<Box<dyn Job>>,
}

impl JobRegistry {
    pub fn new() -> Self {
        Self { jobs: Vec::new() }
    }

    /// Registry holding every built-in command.
    pub fn with_builtin() -> Self {
        let mut r = Self::new();
        r.register(ClassifyJob);
        r.register(ConstructLineJob);
        r.register(ConstructHyperplaneJob);
        r.register(PowerJob);
        r.register(VerifyStarJob);
        r.register(PlotDataJob);
        r
    }

    /// Later registrations replace earlier ones of the same name.
    pub fn register<J: Job + 'static>(&mut self, job: J) {
        self.jobs.retain(|j| j.name() != job.name());
        self.jobs.push(Box::new(job));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Job> {
        self.jobs.iter().find(|j| j.name() == name).map(|j| j.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.jobs.iter().map(|j| j.name()).collect()
    }

    pub fn jobs(&self) -> impl Iterator<Item = &dyn Job> {
        self.jobs.iter().map(|j| j.as_ref())
    }

    pub fn run(&self, command: &str, payload: Value, ctx: &JobContext) -> Result<Value, JobError> {
        let job = self
            .get(command)
            .ok_or_else(|| JobError::UnknownCommand(command.to_string()))?;
        job.run(payload, ctx)
    }

    pub fn run_spec(&self, spec: JobSpec, ctx: &JobContext) -> Result<Value, JobError> {
        self.run(&spec.command, spec.payload, ctx)
    }
}

impl Default for JobRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

/// Runs a job given as JSON text and renders the output, returning the
/// rendered document and the exit status.
pub fn execute(
    registry: &JobRegistry,
    command: Option<&str>,
    input: &str,
    ctx: &JobContext,
    pretty: bool,
) -> (String, i32) {
    let result = serde_json::from_str::<Value>(input)
        .map_err(JobError::from)
        .and_then(|value| match command {
            Some(c) => registry.run(c, value, ctx),
            None => {
                let spec: JobSpec = serde_json::from_value(value)?;
                registry.run_spec(spec, ctx)
            }
        });
    let (value, status) = match result {
        Ok(v) => (v, 0),
        Err(e) => (e.to_json(), e.exit_status()),
    };
    let mut text = if pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("reports serialize");
    text.push('\n');
    (text, status)
}
