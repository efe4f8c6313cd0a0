use std::future::Future;
use std::net::SocketAddr;

use axum::body::Body;
use axum::extract::State;
use axum::http::{header, HeaderMap, HeaderValue, Method, Response, StatusCode, Uri};
use axum::Router;

use super::snapshot::SnapshotStore;

pub const BIND_ENV: &str = "BENCHREG_BIND";
pub const DEFAULT_BIND: &str = "127.0.0.1:8080";

async fn respond(State(store): State<SnapshotStore>, method: Method, uri: Uri, headers: HeaderMap) -> Response<Body> {
    let snapshot = store.current();
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok());
    let rep = snapshot.handle(method.as_str(), uri.path(), accept);
    let mut builder = Response::builder().status(StatusCode::from_u16(rep.status).unwrap_or(StatusCode::NOT_FOUND));
    if let Some(t) = &rep.media_type {
        builder = builder.header(header::CONTENT_TYPE, t);
    }
    if let Some(l) = &rep.location {
        if let Ok(v) = HeaderValue::from_str(l) {
            builder = builder.header(header::LOCATION, v);
        }
    }
    if rep.negotiated {
        builder = builder.header(header::VARY, "Accept");
    }
    builder.body(Body::from(rep.body)).unwrap_or_else(|_| Response::new(Body::empty()))
}

pub fn router(store: SnapshotStore) -> Router {
    Router::new().fallback(respond).with_state(store)
}

/// Serves until `shutdown` completes.
pub async fn serve(
    listener: tokio::net::TcpListener,
    store: SnapshotStore,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(store)).with_graceful_shutdown(shutdown).await
}

/// Binds `addr`, reloads on `SIGHUP`, stops on `SIGINT` or `SIGTERM`.
pub fn run_blocking(store: SnapshotStore, addr: SocketAddr, on_ready: impl FnOnce(SocketAddr)) -> std::io::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        on_ready(listener.local_addr()?);
        #[cfg(unix)]
        {
            use tokio::signal::unix::{signal, SignalKind};
            let mut hup = signal(SignalKind::hangup())?;
            let reload_store = store.clone();
            tokio::spawn(async move {
                while hup.recv().await.is_some() {
                    if let Err(e) = reload_store.reload() {
                        eprintln!("reload failed, keeping the previous snapshot: {e}");
                    }
                }
            });
        }
        serve(listener, store, shutdown_signal()).await
    })
}

async fn shutdown_signal() {
    #[cfg(unix)]
    {
        use tokio::signal::unix::{signal, SignalKind};
        let mut term = match signal(SignalKind::terminate()) {
            Ok(s) => s,
            Err(_) => {
                let _ = tokio::signal::ctrl_c().await;
                return;
            }
        };
        tokio::select! {
            _ = tokio::signal::ctrl_c() => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    {
        let _ = tokio::signal::ctrl_c().await;
    }
}
