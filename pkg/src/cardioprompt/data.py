"""Dataset loading, target binarization, KNN imputation, splitting, scaling.

Missing cells are carried as NaN in a float matrix; a cell is either present
(finite) or absent (NaN), never a sentinel number. Imputation fills only the
absent cells and leaves present cells bitwise untouched.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ImputationError, ParseError, StratificationError, ValidationError
from .schema import DEFAULT_SCHEMA, TARGET_NAME, FeatureSchema

MISSING_TOKENS = {"?", ""}


@dataclass(frozen=True)
class RawDataset:
    """Parsed rows before imputation; NaN marks absent cells, target in 0..4 (or 0/1 after binarization)."""

    matrix: np.ndarray  # (n, 13) float, NaN = missing
    targets: np.ndarray  # (n,) int
    schema: FeatureSchema

    @property
    def n_rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_with_missing(self) -> int:
        if self.n_rows == 0:
            return 0
        return int(np.isnan(self.matrix).any(axis=1).sum())


@dataclass(frozen=True)
class Dataset:
    """Fully observed matrix with binary targets."""

    matrix: np.ndarray  # (n, 13) float, no NaN
    targets: np.ndarray  # (n,) int in {0, 1}
    schema: FeatureSchema

    def __post_init__(self):
        if np.isnan(self.matrix).any():
            raise ValidationError("Dataset matrix must have no missing cells")
        bad = set(np.unique(self.targets)) - {0, 1}
        if bad:
            raise ValidationError(f"Dataset targets must be binary, found {sorted(bad)}")

    @property
    def n_rows(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True)
class DatasetStats:
    n_total: int
    n_with_missing: int
    male_fraction: float
    prevalence_male: float
    prevalence_female: float


@dataclass(frozen=True)
class Scaler:
    """Per-feature mean/stddev fitted on the training split only."""

    mean: np.ndarray
    std: np.ndarray  # zero-variance columns stored as 1.0

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        return (matrix - self.mean) / self.std

    def inverse_transform(self, matrix: np.ndarray) -> np.ndarray:
        return matrix * self.std + self.mean


def load_csv(path: str | Path, schema: FeatureSchema = DEFAULT_SCHEMA) -> RawDataset:
    """Parse a 14-column CSV (13 features + target), "?" or empty cell = missing.

    An optional header row is accepted when it matches the schema's feature
    names plus the target column. Raises ParseError naming the offending
    line for wrong arity, non-numeric cells, or out-of-range targets.
    """
    path = Path(path)
    expected = schema.names + [TARGET_NAME]
    rows: list[list[float]] = []
    targets: list[int] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        for lineno, record in enumerate(reader, start=1):
            if not record or (len(record) == 1 and not record[0].strip()):
                continue  # blank line
            cells = [c.strip() for c in record]
            if lineno == 1 and _is_header(cells):
                if [c.lower() for c in cells] != expected:
                    raise ParseError(
                        f"line 1: header {cells} does not match expected columns {expected}"
                    )
                continue
            if len(cells) != 14:
                raise ParseError(f"line {lineno}: expected 14 columns, got {len(cells)}")
            parsed: list[float] = []
            for name, cell in zip(schema.names, cells[:13]):
                if cell in MISSING_TOKENS:
                    parsed.append(np.nan)
                    continue
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise ParseError(f"line {lineno}: non-numeric value {cell!r} in column {name}") from None
            target_cell = cells[13]
            try:
                target_f = float(target_cell)
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric target {target_cell!r}") from None
            if not target_f.is_integer() or not 0 <= target_f <= 4:
                raise ParseError(f"line {lineno}: target must be an integer in 0..4, got {target_cell!r}")
            rows.append(parsed)
            targets.append(int(target_f))
    matrix = np.array(rows, dtype=float).reshape(len(rows), 13)
    return RawDataset(matrix=matrix, targets=np.array(targets, dtype=int), schema=schema)


def _is_header(cells: list[str]) -> bool:
    def numeric_or_missing(c: str) -> bool:
        if c in MISSING_TOKENS:
            return True
        try:
            float(c)
            return True
        except ValueError:
            return False

    return not all(numeric_or_missing(c) for c in cells)


def binarize_target(raw: RawDataset) -> RawDataset:
    """Collapse severity 1..4 to high risk: target becomes 1 iff original > 0."""
    bad = set(np.unique(raw.targets)) - {0, 1, 2, 3, 4} if raw.n_rows else set()
    if bad:
        raise ValidationError(f"targets outside 0..4: {sorted(bad)}")
    return replace(raw, targets=(raw.targets > 0).astype(int))


def knn_impute(raw: RawDataset, k: int = 5) -> Dataset:
    """Fill each absent cell with the mean of that cell over the k nearest rows.

    Distance between two rows is Euclidean over min-max-scaled features,
    restricted to dimensions present in both rows and rescaled by
    n_features / |shared dimensions| before the square root. Donors for a
    cell are drawn from rows where that cell is present, ranked by
    (distance, row index); all donor distances are computed against the
    original missing pattern, which makes the operation idempotent.
    """
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    bad = set(np.unique(raw.targets)) - {0, 1}
    if bad:
        raise ValidationError("impute after binarize_target; targets must be binary")
    matrix = raw.matrix
    n, d = matrix.shape
    present = ~np.isnan(matrix)
    if n and not present.any(axis=1).all():
        idx = int(np.flatnonzero(~present.any(axis=1))[0])
        raise ImputationError(f"row {idx} has no observed cells")
    for j in range(d):
        if n and not present[:, j].any() and np.isnan(matrix[:, j]).any():
            raise ImputationError(f"column {raw.schema.names[j]} has no observed values to impute from")

    if not np.isnan(matrix).any():
        return Dataset(matrix=matrix.copy(), targets=raw.targets.copy(), schema=raw.schema)

    # Min-max scaling used only inside the distance; output keeps raw units.
    col_min = np.nanmin(matrix, axis=0)
    col_max = np.nanmax(matrix, axis=0)
    span = col_max - col_min
    span[span == 0] = 1.0
    scaled = (matrix - col_min) / span

    out = matrix.copy()
    need_rows = np.flatnonzero(np.isnan(matrix).any(axis=1))
    for i in need_rows:
        diff = scaled - scaled[i]
        shared = present & present[i]
        n_shared = shared.sum(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            sq = np.where(shared, diff * diff, 0.0).sum(axis=1)
            dist = np.sqrt(np.where(n_shared > 0, d / np.maximum(n_shared, 1) * sq, np.inf))
        dist[i] = np.inf  # a row never donates to itself
        for j in np.flatnonzero(np.isnan(matrix[i])):
            donors = np.flatnonzero(present[:, j])
            order = donors[np.argsort(dist[donors], kind="stable")]  # stable = tie by row index
            chosen = order[:k]
            out[i, j] = float(np.mean(matrix[chosen, j]))
    return Dataset(matrix=out, targets=raw.targets.copy(), schema=raw.schema)


def as_raw(ds: Dataset) -> RawDataset:
    """View a fully-observed dataset as a RawDataset (e.g. to re-run imputation)."""
    return RawDataset(matrix=ds.matrix.copy(), targets=ds.targets.copy(), schema=ds.schema)


def split(ds: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded stratified holdout; per-class test quotas by largest remainder."""
    if not 0 < test_fraction < 1:
        raise ValidationError(f"test_fraction must be in (0, 1), got {test_fraction}")
    classes, counts = np.unique(ds.targets, return_counts=True)
    if (counts < 2).any():
        small = classes[counts < 2]
        raise StratificationError(f"class {small[0]} has fewer than 2 members")

    n_test = int(np.floor(ds.n_rows * test_fraction + 0.5))
    exact = counts * test_fraction
    quotas = np.floor(exact).astype(int)
    remainder = n_test - quotas.sum()  # >= 0: sum of floors never exceeds the rounded total
    if remainder > 0:
        order = np.argsort(-(exact - quotas), kind="stable")  # largest fractional part, tie by class order
        for c in order[:remainder]:
            quotas[c] += 1

    rng = np.random.default_rng(seed)
    test_idx: list[np.ndarray] = []
    train_idx: list[np.ndarray] = []
    for c, quota in zip(classes, quotas):
        members = np.flatnonzero(ds.targets == c)
        perm = rng.permutation(members)
        test_idx.append(perm[:quota])
        train_idx.append(perm[quota:])
    test_rows = np.sort(np.concatenate(test_idx))
    train_rows = np.sort(np.concatenate(train_idx))
    return (
        Dataset(ds.matrix[train_rows], ds.targets[train_rows], ds.schema),
        Dataset(ds.matrix[test_rows], ds.targets[test_rows], ds.schema),
    )


def standardize(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset, Scaler]:
    """Z-score both splits with train-only population mean/stddev."""
    if train.n_rows == 0:
        raise ValidationError("cannot standardize an empty training split")
    mean = train.matrix.mean(axis=0)
    std = train.matrix.std(axis=0)
    std = np.where(std == 0, 1.0, std)
    scaler = Scaler(mean=mean, std=std)
    return (
        Dataset(scaler.transform(train.matrix), train.targets.copy(), train.schema),
        Dataset(scaler.transform(test.matrix), test.targets.copy(), test.schema),
        scaler,
    )


def stats(raw: RawDataset) -> DatasetStats:
    """Headline counts: size, missingness, sex balance, per-sex disease prevalence."""
    sex_col = raw.schema.index("sex")
    sex = raw.matrix[:, sex_col]
    diseased = raw.targets > 0
    male = sex == 1
    female = sex == 0
    n_male = int(male.sum())
    n_female = int(female.sum())
    return DatasetStats(
        n_total=raw.n_rows,
        n_with_missing=raw.n_with_missing,
        male_fraction=n_male / raw.n_rows if raw.n_rows else 0.0,
        prevalence_male=float(diseased[male].mean()) if n_male else 0.0,
        prevalence_female=float(diseased[female].mean()) if n_female else 0.0,
    )


def write_imputed_csv(ds: Dataset, path: str | Path) -> None:
    """Emit the canonical fully-numeric audit CSV (same column order, header included)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ds.schema.names + [TARGET_NAME])
        for row, label in zip(ds.matrix, ds.targets):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])
