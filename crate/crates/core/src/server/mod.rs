//! Serving a published snapshot under permanent URLs with content
//! negotiation.

mod http;
mod negotiate;
mod purl;
mod snapshot;

pub use http::{router, run_blocking, serve, BIND_ENV, DEFAULT_BIND};
pub use negotiate::{choose, parse_accept, quality, MediaRange, HTML, OFFERED};
pub use purl::{default_redirects, resolve_purl, split_target, NotFound, RedirectEntry, RedirectError, RedirectTable};
pub use snapshot::{load_snapshot, negotiate, Representation, Resource, Snapshot, SnapshotError, SnapshotStore};
