use crate::{Error, Result};

/// Levi-Civita symbol on 1-based indices, normalised so that
/// `ε_{12…N} = +1`. Any repeated index gives 0.
pub fn levi_civita(indices: &[usize]) -> Result<i8> {
    let n = indices.len();
    if n == 0 {
        return Err(Error::domain("Levi-Civita symbol needs at least one index"));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::domain(format!(
            "Levi-Civita index {bad} outside 1..={n}"
        )));
    }

    let mut seen = vec![false; n];
    for &i in indices {
        if seen[i - 1] {
            return Ok(0);
        }
        seen[i - 1] = true;
    }

    // sign = (-1)^(n - #cycles)
    let mut visited = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            j = indices[j] - 1;
        }
    }
    Ok(if (n - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    })
}
