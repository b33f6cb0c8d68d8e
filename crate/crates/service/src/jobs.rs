use std::collections::HashMap;
use std::sync::Mutex;

use q4eda_core::stability::StabilityReport;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum JobState {
    Running,
    Done { report: StabilityReport },
    Failed { message: String },
}

/// In-process stability jobs keyed by sequential id. Nothing survives a
/// restart.
#[derive(Debug, Default)]
pub struct Jobs {
    inner: Mutex<(u64, HashMap<u64, JobState>)>,
}

impl Jobs {
    pub fn start(&self) -> u64 {
        let mut g = self.inner.lock().unwrap();
        g.0 += 1;
        let id = g.0;
        g.1.insert(id, JobState::Running);
        id
    }

    pub fn finish(&self, id: u64, state: JobState) {
        self.inner.lock().unwrap().1.insert(id, state);
    }

    pub fn get(&self, id: u64) -> Option<JobState> {
        self.inner.lock().unwrap().1.get(&id).cloned()
    }
}
