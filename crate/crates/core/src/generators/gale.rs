use super::{GeneratorError, Result};
use crate::complex::combinations;

/// `d`-subsets of `{1, ..., n}` that are facets of the cyclic polytope
/// `C_d(n)`: between any two non-members lies an even number of members.
pub fn gale_evenness_facets(d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if d < 2 || n < d + 1 {
        return Err(GeneratorError::BadParameters(format!("need n >= d + 1 >= 3, got d = {d}, n = {n}")));
    }
    let out = combinations(n, d)
        .into_iter()
        .map(|s| s.into_iter().map(|i| i + 1).collect::<Vec<_>>())
        .filter(|s| {
            let outside: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
            outside.windows(2).all(|w| s.iter().filter(|&&v| w[0] < v && v < w[1]).count() % 2 == 0)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(
            gale_evenness_facets(2, 5).unwrap(),
            vec![vec![1, 2], vec![1, 5], vec![2, 3], vec![3, 4], vec![4, 5]]
        );
        assert_eq!(gale_evenness_facets(3, 5).unwrap().len(), 6);
        assert_eq!(gale_evenness_facets(4, 6).unwrap().len(), 9);
        assert_eq!(gale_evenness_facets(3, 4).unwrap().len(), 4);
        assert!(gale_evenness_facets(3, 3).is_err());
    }
}
