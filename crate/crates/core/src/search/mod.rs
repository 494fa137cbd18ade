//! Optimality searches, reproducible scans and certificate verification.

mod cert;
mod char3;
mod family;
mod scans;

pub use cert::{verify, Certificate, Method};
pub use char3::char3_defect;
pub use family::{
    is_excluded, optimal_j_set, scan_primes, search_family, Best, PairMode, PrimeScan, SearchReport,
    EXCLUDED_DISCS, TSV_HEADER,
};
pub use scans::{mq_mod3_scan, twin_scan, Mq3Entry, TwinEntry};
