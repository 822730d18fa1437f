pub mod crawl;
pub mod harness;
pub mod scoring;
pub mod textproc;
pub mod topic;
pub mod webio;
