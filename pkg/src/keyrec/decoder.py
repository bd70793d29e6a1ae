"""Non-binary sum-product syndrome decoder and the success logic for the
full-codeword / subset-codeword / multiple-subset-codeword decoders.

The decoder runs probability-domain flooding on the Tanner graph.  A check
node enforces sum_j h_ij x_j = z_i over GF(2^m): incoming messages are
permuted onto the h_ij x_j alphabet, combined by XOR-convolution (computed
through Walsh-Hadamard transforms, since field addition is XOR), offset by
the syndrome symbol, and mapped back through the edge coefficient.  All
edges are processed simultaneously with numpy gathers; rows are padded to
the maximum weight with neutral messages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from keyrec.blockmds import sample_set
from keyrec.channel import ChannelModel, gen_key, posteriors, transmit
from keyrec.qcldpc import QcCode, SparseParityCheck, expand

BlockSubset = tuple[int, ...]


@dataclass(frozen=True)
class DecoderConfig:
    max_iterations: int = 100
    epsilon: float = 1e-12
    schedule: str = "flooding"
    # Disable to force a fixed number of sweeps (exactness tests on trees).
    early_stop: bool = True

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 < self.epsilon < 1e-3:
            raise ValueError("epsilon must lie in (0, 1e-3)")
        if self.schedule != "flooding":
            raise ValueError(f"unsupported schedule {self.schedule!r}")


@dataclass
class DecodeResult:
    beliefs: np.ndarray
    hard: np.ndarray
    converged: bool
    iterations: int


def _wht(a: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform along the last axis (length a power of 2)."""
    out = a.copy()
    n = a.shape[-1]
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            x = out[..., start : start + h].copy()
            out[..., start : start + h] += out[..., start + h : start + 2 * h]
            out[..., start + h : start + 2 * h] = x - out[..., start + h : start + 2 * h]
        h *= 2
    return out


def _leave_one_out_product(F: np.ndarray) -> np.ndarray:
    """Product over axis 1 excluding each slot, via prefix/suffix products."""
    w = F.shape[1]
    pref = np.ones_like(F)
    for s in range(1, w):
        pref[:, s] = pref[:, s - 1] * F[:, s - 1]
    suff = np.ones_like(F)
    for s in range(w - 2, -1, -1):
        suff[:, s] = suff[:, s + 1] * F[:, s + 1]
    return pref * suff


class SumProductDecoder:
    """Flooding sum-product decoder bound to one parity-check matrix.

    Instances hold preallocated message buffers and are not thread-safe;
    build one per worker.
    """

    def __init__(self, H: SparseParityCheck, cfg: DecoderConfig | None = None):
        self.H = H
        self.cfg = cfg or DecoderConfig()
        spec = H.field
        q = spec.q
        M, w = H.cols.shape
        self.q, self.M, self.N, self.w = q, M, H.n_cols, w

        self.live = np.arange(w)[None, :] < H.row_weights[:, None]
        sym = np.arange(q, dtype=np.int64)
        mt = spec.mul_table.astype(np.int64)
        inv = spec.inv_table.astype(np.int64)

        coeffs = H.coeffs.astype(np.int64)
        # t-space permutation: Qt[s] = msg[h^-1 * s]; identity on padded slots.
        hinv = np.where(self.live, inv[coeffs], 1)
        self.t_perm = mt[hinv[:, :, None], sym[None, None, :]]
        # back-permutation: out[x] = Pt[h * x]; padded slots read index 0.
        self.x_perm = mt[np.where(self.live, coeffs, 0)[:, :, None], sym[None, None, :]]

        # Per-variable incident edges as flat (row * w + slot) ids; the pad
        # id E points at an all-ones dummy message row.
        self.E = M * w
        per_col: list[list[int]] = [[] for _ in range(self.N)]
        for i in range(M):
            for s in range(int(H.row_weights[i])):
                per_col[int(H.cols[i, s])].append(i * w + s)
        dmax = max((len(v) for v in per_col), default=0)
        self.col_edges = np.full((self.N, max(dmax, 1)), self.E, dtype=np.int64)
        for v, ids in enumerate(per_col):
            self.col_edges[v, : len(ids)] = ids
        self.col_live = self.col_edges < self.E

        self.delta0 = np.zeros(q)
        self.delta0[0] = 1.0
        self._sym = sym

    def _syndrome_matches(self, hard: np.ndarray, synd: np.ndarray) -> bool:
        return bool(np.array_equal(self.H.syndrome(hard), synd))

    def decode(self, synd: np.ndarray, priors: np.ndarray) -> DecodeResult:
        q, M, N, w = self.q, self.M, self.N, self.w
        synd = np.asarray(synd)
        if synd.shape != (M,):
            raise ValueError(f"syndrome length {synd.shape} != {M}")
        if synd.size and (int(synd.min()) < 0 or int(synd.max()) >= q):
            raise ValueError("syndrome symbols must lie in [0, q)")
        priors = np.asarray(priors, dtype=np.float64)
        if priors.shape != (N, q):
            raise ValueError(f"prior matrix shape {priors.shape} != ({N}, {q})")
        if priors.min() < 0 or np.abs(priors.sum(axis=1) - 1.0).max() > 1e-6:
            raise ValueError("prior rows must be nonnegative and sum to 1")
        priors = priors / priors.sum(axis=1, keepdims=True)

        beliefs = priors.copy()
        hard = beliefs.argmax(axis=1).astype(np.uint8)
        if self.cfg.early_stop and self._syndrome_matches(hard, synd):
            return DecodeResult(beliefs, hard, True, 0)

        # Variable-to-check messages, initialised from the priors.
        v2c = priors[self.H.cols]
        v2c[~self.live] = self.delta0
        cflat = np.empty((self.E + 1, q))
        cflat[self.E] = 1.0
        synd_idx = (synd.astype(np.int64)[:, None, None] ^ self._sym[None, None, :])

        iterations = self.cfg.max_iterations
        converged = False
        for it in range(1, self.cfg.max_iterations + 1):
            # Check update: XOR-convolve all-but-one incoming t-space
            # messages, then read off the symbol consistent with z_i.
            Qt = np.take_along_axis(v2c, self.t_perm, axis=2)
            F = _wht(Qt)
            Spart = _wht(_leave_one_out_product(F)) / q
            np.maximum(Spart, 0.0, out=Spart)
            Pt = np.take_along_axis(Spart, np.broadcast_to(synd_idx, (M, w, q)), axis=2)
            c2v = np.take_along_axis(Pt, self.x_perm, axis=2)
            sums = c2v.sum(axis=2, keepdims=True)
            np.divide(c2v, sums, out=c2v, where=sums > 0)

            # Variable update.
            cflat[: self.E] = c2v.reshape(self.E, q)
            inc = cflat[self.col_edges]
            excl = _leave_one_out_product(inc)
            prod_all = excl[:, 0] * inc[:, 0]
            beliefs = priors * prod_all
            bsum = beliefs.sum(axis=1, keepdims=True)
            beliefs = np.where(bsum > 0, beliefs / np.where(bsum > 0, bsum, 1.0), 1.0 / q)

            out = priors[:, None, :] * excl
            np.maximum(out, self.cfg.epsilon, out=out)
            out /= out.sum(axis=2, keepdims=True)
            v2c.reshape(self.E, q)[self.col_edges[self.col_live]] = out[self.col_live]

            hard = beliefs.argmax(axis=1).astype(np.uint8)
            if self.cfg.early_stop and self._syndrome_matches(hard, synd):
                iterations = it
                converged = True
                break
        if not converged:
            converged = self._syndrome_matches(hard, synd)
        return DecodeResult(beliefs, hard, converged, iterations)


def decode_bp(
    H: SparseParityCheck,
    synd: np.ndarray,
    priors: np.ndarray,
    cfg: DecoderConfig | None = None,
) -> DecodeResult:
    """One-shot decode; build a SumProductDecoder directly for repeated use."""
    return SumProductDecoder(H, cfg).decode(synd, priors)


# ======================================================================
# Success criteria and subset selection
# ======================================================================


def fc_evaluate(hard: np.ndarray, truth: np.ndarray) -> bool:
    """Full-codeword success: exact equality with the ground truth."""
    hard, truth = np.asarray(hard), np.asarray(truth)
    if hard.shape != truth.shape:
        raise ValueError("length mismatch")
    return bool(np.array_equal(hard, truth))


def sc_evaluate(hard: np.ndarray, truth: np.ndarray, kept: np.ndarray) -> bool:
    """Subset success: equality restricted to the kept indices."""
    kept = np.asarray(kept, dtype=np.int64)
    return bool(np.array_equal(np.asarray(hard)[kept], np.asarray(truth)[kept]))


def block_reliability(beliefs: np.ndarray, block: int, z: int) -> float:
    """Reliability of a 1-based block column: its weakest symbol's top belief."""
    rows = beliefs[(block - 1) * z : block * z]
    return float(rows.max(axis=1).min())


def msc_select(
    beliefs: np.ndarray, gamma: int, kappa: int, z: int
) -> tuple[np.ndarray, BlockSubset]:
    """Drop the gamma least reliable block columns; keep the rest.

    Ties exclude the lower block index first, for reproducibility.  For a
    certified block-MDS code every complement of gamma blocks has a full
    rank check submatrix, so any selection is admissible.
    """
    rels = np.array([block_reliability(beliefs, b, z) for b in range(1, kappa + 1)])
    order = np.lexsort((np.arange(kappa), rels))
    excluded = tuple(sorted(int(b) + 1 for b in order[:gamma]))
    kept_blocks = tuple(b for b in range(1, kappa + 1) if b not in excluded)
    return sample_set(kept_blocks, z), excluded


@dataclass
class TrialOutcome:
    """Per-trial record of decoder convergence and FC/MSC success."""

    converged: bool
    iterations: int
    fc_success: bool
    msc_excluded: BlockSubset
    msc_success: bool
    per_subset_success: dict[BlockSubset, bool] | None = field(default=None)

    @property
    def undetected_error(self) -> bool:
        """Syndrome satisfied but the word is wrong; counted as failure."""
        return self.converged and not self.fc_success


def run_trial(
    code: QcCode,
    model: ChannelModel,
    cfg: DecoderConfig,
    rng: np.random.Generator,
    decoder: SumProductDecoder | None = None,
    record_per_subset: bool = False,
) -> TrialOutcome:
    """One end-to-end reconciliation trial.

    Draws a key, passes it through the channel, decodes from the syndrome
    and the noisy observation, then scores the full word and the selected
    subset.  A prebuilt decoder (holding the expanded matrix) avoids
    re-expansion across trials.
    """
    if decoder is None:
        decoder = SumProductDecoder(expand(code), cfg)
    x = gen_key(code.n, code.field.q, rng)
    y = transmit(x, model, rng)
    synd = decoder.H.syndrome(x)
    result = decoder.decode(synd, posteriors(y, model))

    fc = fc_evaluate(result.hard, x)
    kept, excluded = msc_select(result.beliefs, code.gamma, code.kappa, code.z)
    msc = sc_evaluate(result.hard, x, kept)
    assert not fc or msc, "full-word success must imply subset success"

    per_subset = None
    if record_per_subset:
        per_subset = {}
        for b in combinations(range(1, code.kappa + 1), code.gamma):
            kept_b = tuple(c for c in range(1, code.kappa + 1) if c not in b)
            per_subset[b] = sc_evaluate(result.hard, x, sample_set(kept_b, code.z))
    return TrialOutcome(
        converged=result.converged,
        iterations=result.iterations,
        fc_success=fc,
        msc_excluded=excluded,
        msc_success=msc,
        per_subset_success=per_subset,
    )
