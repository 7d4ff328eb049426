use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Label, QuestionnaireRecord};
use crate::error::{ElmError, Result};

/// Train / validation / test fractions.
pub const SPLIT_RATIOS: (f64, f64, f64) = (0.70, 0.10, 0.20);

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSplit {
    pub train: Vec<QuestionnaireRecord>,
    pub validation: Vec<QuestionnaireRecord>,
    pub test: Vec<QuestionnaireRecord>,
    pub seed: u64,
    pub stratified: bool,
}

impl DatasetSplit {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.train.len(), self.validation.len(), self.test.len())
    }
}

/// Part sizes for `n` records: `floor(0.7n)`, `floor(0.1n)`, remainder.
pub(crate) fn part_sizes(n: usize) -> (usize, usize, usize) {
    // integer arithmetic keeps e.g. n = 10 exact
    let train = n * 7 / 10;
    let validation = n / 10;
    (train, validation, n - train - validation)
}

/// Deterministic shuffled split with the 70/10/20 floor rule.
///
/// With `stratified` each class is shuffled on its own and the global part
/// sizes are apportioned across classes by largest remainder, so every part
/// holds each class within one record of its proportional share.
pub fn split_dataset(records: &[QuestionnaireRecord], seed: u64, stratified: bool) -> Result<DatasetSplit> {
    let n = records.len();
    if n < 3 {
        return Err(ElmError::DatasetTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n_train, n_val, _) = part_sizes(n);

    let groups: Vec<Vec<usize>> = if stratified {
        let mut by_class: BTreeMap<Option<Label>, Vec<usize>> = BTreeMap::new();
        for (i, r) in records.iter().enumerate() {
            by_class.entry(r.label).or_default().push(i);
        }
        by_class.into_values().collect()
    } else {
        vec![(0..n).collect()]
    };

    let class_sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let train_alloc = apportion(&class_sizes, n_train, SPLIT_RATIOS.0, &vec![0; groups.len()]);
    let remaining: Vec<usize> = class_sizes.iter().zip(&train_alloc).map(|(s, t)| s - t).collect();
    let val_alloc = apportion(&class_sizes, n_val, SPLIT_RATIOS.1, &train_alloc);
    debug_assert!(val_alloc.iter().zip(&remaining).all(|(v, r)| v <= r));

    let mut split = DatasetSplit {
        train: Vec::with_capacity(n_train),
        validation: Vec::with_capacity(n_val),
        test: Vec::with_capacity(n - n_train - n_val),
        seed,
        stratified,
    };
    for ((mut idx, t), v) in groups.into_iter().zip(train_alloc).zip(val_alloc) {
        idx.shuffle(&mut rng);
        let take = |ids: &[usize]| ids.iter().map(|&i| records[i].clone()).collect::<Vec<_>>();
        split.train.extend(take(&idx[..t]));
        split.validation.extend(take(&idx[t..t + v]));
        split.test.extend(take(&idx[t + v..]));
    }
    Ok(split)
}

/// Distributes `total` slots over groups proportionally to `ratio * size`,
/// respecting each group's capacity `size - used`.
fn apportion(sizes: &[usize], total: usize, ratio: f64, used: &[usize]) -> Vec<usize> {
    let exact: Vec<f64> = sizes.iter().map(|&s| s as f64 * ratio).collect();
    let mut alloc: Vec<usize> = exact
        .iter()
        .zip(sizes.iter().zip(used))
        .map(|(&e, (&s, &u))| (e.floor() as usize).min(s - u))
        .collect();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - alloc[a] as f64;
        let fb = exact[b] - alloc[b] as f64;
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    let mut missing = total.saturating_sub(alloc.iter().sum());
    while missing > 0 {
        let before = missing;
        for &g in &order {
            if missing == 0 {
                break;
            }
            if alloc[g] + used[g] < sizes[g] {
                alloc[g] += 1;
                missing -= 1;
            }
        }
        assert!(missing < before, "split capacity exhausted");
    }
    // floors can overshoot the global floor only through rounding of ratio * size
    let mut excess = alloc.iter().sum::<usize>().saturating_sub(total);
    for &g in order.iter().rev() {
        while excess > 0 && alloc[g] > 0 {
            alloc[g] -= 1;
            excess -= 1;
        }
    }
    alloc
}
