//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they fall back to plain iteration with identical results.

/// Map `f` over `items` keeping input order. `jobs` bounds the worker
/// count; `None` uses the global pool.
pub fn map_ordered<T, R, F>(items: Vec<T>, jobs: Option<usize>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match jobs {
            Some(1) => items.into_iter().map(f).collect(),
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
                Err(_) => items.into_par_iter().map(f).collect(),
            },
            None => items.into_par_iter().map(f).collect(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        items.into_iter().map(f).collect()
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_kept() {
        let v: Vec<u64> = (0..100).collect();
        for jobs in [None, Some(1), Some(3)] {
            let out = map_ordered(v.clone(), jobs, |x| x * x);
            assert_eq!(out, v.iter().map(|x| x * x).collect::<Vec<_>>());
        }
    }
}
