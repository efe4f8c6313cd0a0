//! A registry built from the fixtures by running the command line, plus a
//! live server over its snapshot.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::thread::JoinHandle;

use benchreg::server::{serve, SnapshotStore};
use tempfile::TempDir;

use super::{copy_dir, fixtures};

pub struct Registry {
    _dir: TempDir,
    pub root: PathBuf,
    pub config: PathBuf,
    pub catalog: PathBuf,
    pub snapshot: PathBuf,
    pub nanopubs: PathBuf,
}

pub fn cli(args: &[&str]) -> i32 {
    let mut argv = vec!["benchreg", "--quiet"];
    argv.extend_from_slice(args);
    benchreg::cli::main_with(argv)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

impl Registry {
    /// Copies the fixture registry into a fresh directory.
    pub fn fresh() -> Registry {
        let dir = TempDir::new().unwrap();
        let root = dir.path().join("registry");
        copy_dir(&fixtures().join("registry"), &root);
        let nanopubs = dir.path().join("nanopubs");
        copy_dir(&fixtures().join("nanopubs"), &nanopubs);
        Registry {
            config: root.join("benchreg.toml"),
            catalog: root.join("catalog"),
            snapshot: dir.path().join("snapshot"),
            root,
            nanopubs,
            _dir: dir,
        }
    }

    pub fn dataset(&self, id: &str) -> PathBuf {
        self.catalog.join("datasets").join(id)
    }

    pub fn run(&self, args: &[&str]) -> i32 {
        let mut argv = vec!["--config", s(&self.config)];
        argv.extend_from_slice(args);
        cli(&argv)
    }

    pub fn validate(&self) -> i32 {
        let a = self.dataset("sample-stream");
        let b = self.dataset("city-graphs");
        self.run(&["validate", s(&a), s(&b)])
    }

    pub fn package(&self) -> i32 {
        let d = self.dataset("sample-stream");
        self.run(&["package", s(&d.join("source")), s(&d.join("metadata.ttl")), s(&d.join("package"))])
    }

    pub fn fetch_reports(&self) -> i32 {
        self.run(&["fetch-reports", s(&self.catalog.join("reports")), "--index", s(&self.nanopubs)])
    }

    pub fn gen_site(&self) -> i32 {
        self.run(&["gen-site", s(&self.catalog), s(&self.snapshot)])
    }

    /// validate, package, fetch-reports and gen-site; panics on a non-zero
    /// exit.
    pub fn build() -> Registry {
        let r = Registry::fresh();
        assert_eq!(r.validate(), 0, "validate");
        assert_eq!(r.package(), 0, "package");
        assert_eq!(r.fetch_reports(), 0, "fetch-reports");
        assert_eq!(r.gen_site(), 0, "gen-site");
        r
    }
}

/// A server on an ephemeral port, stopped on drop.
pub struct TestServer {
    pub addr: SocketAddr,
    pub store: SnapshotStore,
    stop: Option<tokio::sync::oneshot::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl TestServer {
    pub fn start(snapshot: &Path) -> TestServer {
        let store = SnapshotStore::open(snapshot).unwrap();
        let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
        let (ready_tx, ready_rx) = std::sync::mpsc::channel();
        let served = store.clone();
        let thread = std::thread::spawn(move || {
            let rt = tokio::runtime::Builder::new_multi_thread().worker_threads(2).enable_all().build().unwrap();
            rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
                ready_tx.send(listener.local_addr().unwrap()).unwrap();
                serve(listener, served, async {
                    let _ = stopped.await;
                })
                .await
                .unwrap();
            });
        });
        let addr = ready_rx.recv().unwrap();
        TestServer { addr, store, stop: Some(stop), thread: Some(thread) }
    }

    pub fn url(&self, path: &str) -> String {
        format!("http://{}{}", self.addr, path)
    }

    pub fn client() -> reqwest::blocking::Client {
        reqwest::blocking::Client::builder().redirect(reqwest::redirect::Policy::none()).build().unwrap()
    }
}

impl Drop for TestServer {
    fn drop(&mut self) {
        if let Some(stop) = self.stop.take() {
            let _ = stop.send(());
        }
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}
