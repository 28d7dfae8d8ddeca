//! Small execution helper shared by the pressure and report pipelines.

/// Run independent tasks, optionally on scoped worker threads. Results come
/// back in task order either way, so callers stay deterministic.
pub(crate) fn run_all<'env, T: Send>(
    tasks: Vec<Box<dyn FnOnce() -> T + Send + 'env>>,
    parallel: bool,
) -> Vec<T> {
    if !parallel || tasks.len() <= 1 {
        return tasks.into_iter().map(|task| task()).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = tasks.into_iter().map(|task| scope.spawn(task)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}
