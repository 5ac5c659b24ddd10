"""Build the five-part risk-assessment prompt.

Structure: task instruction, attribute glossary, optional in-context examples,
optional domain-knowledge paragraph, final question. Parts are joined by one
blank line; omitted parts leave no residue. Assembly is pure and
byte-deterministic so cached completions stay valid across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .dk import DkVariant, DomainKnowledge
from .errors import SamplingError, ValidationError
from .schema import FeatureSchema

TASK_INSTRUCTION = """Given the provided input attributes, evaluate the risk of heart disease for the individual.
The diagnosis of heart disease (angiographic disease status) is based on the degree of diameter narrowing in the blood vessels:
- 0: Less than 50% diameter narrowing, implying a lower risk.
- 1: More than 50% diameter narrowing, indicating a higher risk.
If the assessment determines a high risk, the output should be '1'. If the risk is determined to be low, the output should be '0'."""

# Stray instruction carried over from a different task; reproduced only when
# paper_faithful fidelity is requested.
CREDIT_RISK_SENTENCE = "Evaluate the credit risk based on given attributes. If good, respond with '1', if bad, respond with '0'."

ATTRIBUTES_HEADER = "The explanation of each attribute is as follows:"

QUESTION_LEAD = "Now, given the following inputs, please evaluate the risk of heart disease:"


@dataclass(frozen=True)
class PromptSpec:
    n_ex: int
    dk: DomainKnowledge
    seed: int = 0
    paper_faithful: bool = False

    def __post_init__(self):
        if self.n_ex < 0:
            raise ValidationError("example count must be >= 0")


@dataclass(frozen=True)
class Prompt:
    part1_task: str
    part2_attributes: str
    part3_examples: tuple[str, ...]
    part4_dk: str  # "" when no domain knowledge
    part5_question: str

    @property
    def text(self) -> str:
        parts = [self.part1_task, self.part2_attributes, *self.part3_examples]
        if self.part4_dk:
            parts.append(self.part4_dk)
        parts.append(self.part5_question)
        return "\n\n".join(parts)


def render_value(v: float) -> str:
    """Shortest exact decimal: 57.0 -> "57", 0.2 -> "0.2"."""
    f = float(v)
    if not math.isfinite(f):
        raise ValidationError(f"non-finite feature value {v!r}")
    if f == int(f):
        return str(int(f))
    return repr(f)


def render_instance(x, schema: FeatureSchema, float_style: bool = False) -> str:
    """Comma-separated "name: value" pairs in canonical feature order.

    float_style renders whole numbers with a trailing .0 ("46.0"), matching how
    the final query line is printed in paper_faithful mode.
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != len(schema.names):
        raise ValidationError(f"expected {len(schema.names)} feature values, got {x.shape[0]}")
    render = (lambda v: str(float(v))) if float_style else render_value
    return ", ".join(f"{name}: {render(v)}" for name, v in zip(schema.names, x))


def sample_examples(train: Dataset, n_ex: int, seed: int) -> list[tuple[np.ndarray, int]]:
    """Stratified draw without replacement: ceil(n/2) positives and floor(n/2)
    negatives, interleaved starting with a positive. Deterministic per seed."""
    if n_ex < 0:
        raise ValidationError("example count must be >= 0")
    if n_ex == 0:
        return []
    if n_ex > train.n_rows:
        raise SamplingError(f"asked for {n_ex} examples from {train.n_rows} rows")
    n_pos = math.ceil(n_ex / 2)
    n_neg = n_ex - n_pos
    pos_idx = np.flatnonzero(train.targets == 1)
    neg_idx = np.flatnonzero(train.targets == 0)
    if len(pos_idx) < n_pos:
        raise SamplingError(f"need {n_pos} positive examples, have {len(pos_idx)}")
    if len(neg_idx) < n_neg:
        raise SamplingError(f"need {n_neg} negative examples, have {len(neg_idx)}")
    rng = np.random.default_rng(seed)
    # draw order fixed (positives first) so the seed fully pins the result
    pos_pick = rng.choice(pos_idx, size=n_pos, replace=False)
    neg_pick = rng.choice(neg_idx, size=n_neg, replace=False)
    out: list[tuple[np.ndarray, int]] = []
    for i in range(n_ex):
        src = pos_pick[i // 2] if i % 2 == 0 else neg_pick[i // 2]
        out.append((train.matrix[src].copy(), int(train.targets[src])))
    return out


def assemble_prompt(
    schema: FeatureSchema,
    spec: PromptSpec,
    examples: list[tuple[np.ndarray, int]],
    query,
) -> Prompt:
    if len(examples) != spec.n_ex:
        raise ValidationError(f"spec wants {spec.n_ex} examples, got {len(examples)}")

    part1 = TASK_INSTRUCTION
    if spec.paper_faithful:
        part1 = part1 + "\n" + CREDIT_RISK_SENTENCE

    part2 = "\n".join([ATTRIBUTES_HEADER] + [f"- {line}" for line in schema.attribute_lines()])

    blocks = []
    for i, (x, label) in enumerate(examples, start=1):
        if label not in (0, 1):
            raise ValidationError(f"example {i} label must be 0/1, got {label!r}")
        blocks.append(f"Example {i}:\n<Inputs {i}>: {render_instance(x, schema)}\n<Answer {i}>: {label}")

    part4 = ""
    if spec.dk.variant is not DkVariant.NONE:
        part4 = f"Domain Knowledge:\n{spec.dk.text}"

    query_line = render_instance(query, schema, float_style=spec.paper_faithful)
    tail = " ?" if spec.paper_faithful else ""
    part5 = f"{QUESTION_LEAD}\n<Inputs>: {query_line}\n<Answer>:{tail}"

    return Prompt(part1, part2, tuple(blocks), part4, part5)
