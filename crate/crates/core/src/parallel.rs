/// Run `f` on a dedicated rayon pool with `threads` workers; 0 means the
/// global pool (one worker per core).
pub fn run<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
