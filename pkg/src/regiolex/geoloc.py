"""Geolocation harness: rankings as feature selectors for a softmax classifier.

Users are the classification unit: one document per user holding their
aggregated token counts. A ranking's head supplies the feature words, a
multinomial logistic regression predicts the user's location, and quality
is reported as accuracy plus the mean great-circle distance between the
predicted and true location capitals.

Training is deliberately plain: full-batch gradient descent on the
L2-regularized multinomial cross-entropy, with step halving whenever a
step would increase the loss. Deterministic given the split seed.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import RawPost
from .locations import LocationTable
from .metrics import Ranking
from .textnorm import extract_tokens

EARTH_RADIUS_KM = 6371.0


@dataclass
class UserDocument:
    user_id: str
    location_id: str
    counts: dict[str, int]


@dataclass
class Split:
    train: list[UserDocument]
    test: list[UserDocument]
    seed: int


@dataclass(frozen=True)
class FeatureSet:
    metric: str
    words: tuple[str, ...]

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Hyperparams:
    learning_rate: float = 0.5
    l2: float = 1e-4
    max_epochs: int = 500
    tol: float = 1e-7
    seed: int = 0
    log_counts: bool = True  # feature values log(1+count); raw counts if False


@dataclass
class GeoModel:
    feature_words: tuple[str, ...]
    class_ids: tuple[str, ...]
    weights: np.ndarray  # (classes, features + 1); last column is the bias
    hyperparams: Hyperparams
    loss_history: list[float] = field(default_factory=list)


@dataclass
class EvalResult:
    accuracy: float
    mean_distance_km: float
    confusion: dict[tuple[str, str], int]  # (true, predicted) -> count


# -- documents and splits -----------------------------------------------------


def build_user_documents(
    posts: Iterable[RawPost],
    locations: LocationTable,
    vocabulary: Iterable[str],
) -> list[UserDocument]:
    """One document per user with counts restricted to the vocabulary.

    Users whose posts yield no vocabulary tokens keep an all-zero (empty)
    count map. Posts conflicting with a user's first-seen location are
    skipped, mirroring corpus ingestion.
    """
    vocab = set(vocabulary)
    docs: dict[str, UserDocument] = {}
    for post in posts:
        if post.location_id not in locations:
            continue
        doc = docs.get(post.user_id)
        if doc is None:
            doc = docs[post.user_id] = UserDocument(post.user_id, post.location_id, {})
        elif doc.location_id != post.location_id:
            continue
        for tok in extract_tokens(post.text):
            if tok in vocab:
                doc.counts[tok] = doc.counts.get(tok, 0) + 1
    return list(docs.values())


def split_users(
    docs: Sequence[UserDocument], train_n: int, test_n: int, seed: int
) -> Split:
    """Disjoint uniform random train/test user samples, deterministic per seed."""
    if train_n + test_n > len(docs):
        raise ValueError(
            f"cannot draw {train_n}+{test_n} users from {len(docs)} documents"
        )
    rng = np.random.default_rng(seed)
    picked = rng.permutation(len(docs))[: train_n + test_n]
    train = [docs[i] for i in picked[:train_n]]
    test = [docs[i] for i in picked[train_n:]]
    return Split(train, test, seed)


def select_features(
    ranking: Ranking, fraction: float | None = None, count: int | None = None
) -> FeatureSet:
    """Head of a ranking as a feature set; size = ceil(fraction * K) or count."""
    if (fraction is None) == (count is None):
        raise ValueError("pass exactly one of fraction or count")
    if fraction is not None:
        if not 0.0 < fraction <= 1.0:
            raise ValueError(f"fraction must be in (0, 1], got {fraction}")
        count = math.ceil(fraction * len(ranking))
    if count > len(ranking):
        raise ValueError(f"requested {count} features from a {len(ranking)}-word ranking")
    return FeatureSet(ranking.metric, tuple(ranking.words()[:count]))


# -- vectorization and training --------------------------------------------------


def vectorize(
    docs: Sequence[UserDocument], features: FeatureSet, log_counts: bool = True
) -> np.ndarray:
    """(n_docs, n_features + 1) design matrix; last column is the bias 1."""
    index = features.index
    x = np.zeros((len(docs), len(features) + 1))
    for row, doc in enumerate(docs):
        for word, c in doc.counts.items():
            col = index.get(word)
            if col is not None:
                x[row, col] = c
    if log_counts:
        x[:, :-1] = np.log1p(x[:, :-1])
    x[:, -1] = 1.0
    return x


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def loss_and_grad(
    weights: np.ndarray, x: np.ndarray, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray]:
    """L2-regularized multinomial cross-entropy and its gradient.

    The bias column (last) is not regularized.
    """
    n = x.shape[0]
    log_p = _log_softmax(x @ weights.T)
    loss = -(y * log_p).sum() / n + 0.5 * l2 * (weights[:, :-1] ** 2).sum()
    grad = (np.exp(log_p) - y).T @ x / n
    grad[:, :-1] += l2 * weights[:, :-1]
    return float(loss), grad


def train(
    train_docs: Sequence[UserDocument],
    features: FeatureSet,
    locations: LocationTable,
    hyperparams: Hyperparams = Hyperparams(),
) -> GeoModel:
    """Fit softmax-regression weights by full-batch gradient descent."""
    if not train_docs:
        raise ValueError("empty training set")
    class_ids = tuple(locations.ids())
    class_index = {c: i for i, c in enumerate(class_ids)}
    x = vectorize(train_docs, features, hyperparams.log_counts)
    y = np.zeros((len(train_docs), len(class_ids)))
    for row, doc in enumerate(train_docs):
        y[row, class_index[doc.location_id]] = 1.0

    weights = np.zeros((len(class_ids), len(features) + 1))
    lr = hyperparams.learning_rate
    loss, grad = loss_and_grad(weights, x, y, hyperparams.l2)
    if not math.isfinite(loss):
        raise ValueError(f"non-finite initial loss {loss} on {x.shape} design matrix")
    history = [loss]
    for _ in range(hyperparams.max_epochs):
        stepped = False
        while lr > 1e-12:
            candidate = weights - lr * grad
            new_loss, new_grad = loss_and_grad(candidate, x, y, hyperparams.l2)
            if not math.isfinite(new_loss):
                raise ValueError(f"non-finite loss at learning rate {lr}")
            if new_loss <= loss:
                stepped = True
                break
            lr /= 2.0
        if not stepped:
            break
        improvement = loss - new_loss
        weights, loss, grad = candidate, new_loss, new_grad
        history.append(loss)
        if improvement < hyperparams.tol:
            break
    return GeoModel(features.words, class_ids, weights, hyperparams, history)


def predict_proba(model: GeoModel, doc: UserDocument) -> np.ndarray:
    features = FeatureSet("", model.feature_words)
    x = vectorize([doc], features, model.hyperparams.log_counts)
    return np.exp(_log_softmax(x @ model.weights.T))[0]


def predict(model: GeoModel, doc: UserDocument) -> str:
    """Argmax-probability class; ties go to the lowest class index."""
    return model.class_ids[int(np.argmax(predict_proba(model, doc)))]


# -- evaluation ---------------------------------------------------------------


def haversine_km(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Great-circle distance in km between (lat, lon) points in degrees."""
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    s = (
        math.sin((lat2 - lat1) / 2.0) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(s)))


def evaluate(
    model: GeoModel, test_docs: Sequence[UserDocument], locations: LocationTable
) -> EvalResult:
    """Accuracy and mean capital-to-capital distance over a test set."""
    if not test_docs:
        raise ValueError("empty test set")
    features = FeatureSet("", model.feature_words)
    x = vectorize(test_docs, features, model.hyperparams.log_counts)
    picks = np.argmax(x @ model.weights.T, axis=1)
    correct = 0
    total_km = 0.0
    confusion: dict[tuple[str, str], int] = {}
    for doc, pick in zip(test_docs, picks):
        predicted = model.class_ids[int(pick)]
        key = (doc.location_id, predicted)
        confusion[key] = confusion.get(key, 0) + 1
        if predicted == doc.location_id:
            correct += 1
        else:
            total_km += haversine_km(
                locations.capital(predicted), locations.capital(doc.location_id)
            )
    return EvalResult(correct / len(test_docs), total_km / len(test_docs), confusion)


# -- sweep -----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    metric: str
    fraction: float
    n_features: int
    accuracy: float
    mean_distance_km: float
    train_seconds: float


def sweep(
    rankings: dict[str, Ranking],
    fractions: Sequence[float],
    split: Split,
    locations: LocationTable,
    hyperparams: Hyperparams = Hyperparams(),
    on_model=None,
) -> list[SweepRow]:
    """Train and evaluate one model per (ranking, fraction) cell.

    on_model(metric, fraction, model), when given, receives every trained
    model (e.g. for persistence).
    """
    rows = []
    for metric, ranking in rankings.items():
        for fraction in fractions:
            features = select_features(ranking, fraction=fraction)
            started = time.perf_counter()
            model = train(split.train, features, locations, hyperparams)
            elapsed = time.perf_counter() - started
            if on_model is not None:
                on_model(metric, fraction, model)
            result = evaluate(model, split.test, locations)
            rows.append(
                SweepRow(
                    metric,
                    fraction,
                    len(features),
                    result.accuracy,
                    result.mean_distance_km,
                    elapsed,
                )
            )
    return rows


def write_sweep_tsv(rows: Sequence[SweepRow], path: str | Path, header_comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("metric\tfraction\tn_features\taccuracy\tmean_distance_km\ttrain_seconds\n")
        for r in rows:
            fh.write(
                f"{r.metric}\t{r.fraction:g}\t{r.n_features}\t{r.accuracy:.6f}\t"
                f"{r.mean_distance_km:.3f}\t{r.train_seconds:.3f}\n"
            )


# -- model persistence --------------------------------------------------------------

MODEL_FORMAT = "regiolex-geomodel"
MODEL_VERSION = 1


def save_model(model: GeoModel, path: str | Path) -> None:
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "feature_words": list(model.feature_words),
        "class_ids": list(model.class_ids),
        "weights": model.weights.tolist(),
        "hyperparams": asdict(model.hyperparams),
        "loss_history": model.loss_history,
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")


def load_model(path: str | Path) -> GeoModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a geolocation model file")
    if payload.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: unsupported model version {payload.get('version')}")
    return GeoModel(
        feature_words=tuple(payload["feature_words"]),
        class_ids=tuple(payload["class_ids"]),
        weights=np.array(payload["weights"]),
        hyperparams=Hyperparams(**payload["hyperparams"]),
        loss_history=list(payload["loss_history"]),
    )
