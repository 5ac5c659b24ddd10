"""Turn a feature-importance ranking into domain-knowledge prompt text.

Two text shapes exist. The "top features" shape names the most and least
important features; the "feature order" shape walks the full ranking. The
variant with no knowledge renders empty text and the prompt builder drops the
section entirely.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ValidationError
from .schema import FeatureSchema

# Display tags for DK source models: lowercase class-style names.
SOURCE_TAGS = {
    "RF": "randomforestclassifier",
    "LR": "logisticregression",
    "GBT": "xgbclassifier",
}

# Families whose explanations feed prompts by default. Others (ADA, KNN, MLP)
# produce rankings too but are not wired into the dk grid.
DEFAULT_DK_FAMILIES = ("RF", "LR", "GBT")


class DkVariant(enum.Enum):
    NONE = "NO"
    MLFI = "MLFI"
    MLFI_ORD = "MLFI-ord"


@dataclass(frozen=True)
class DomainKnowledge:
    variant: DkVariant
    source_name: str  # empty for NONE
    text: str  # empty for NONE

    def __post_init__(self):
        if self.variant is DkVariant.NONE and (self.text or self.source_name):
            raise ValidationError("no-knowledge variant carries no text or source")


def _ranked_names(ranking) -> list[str]:
    """Feature names in descending-importance order from an ImportanceRanking
    (or any object with .entries of (name, weight) pairs)."""
    names = [name for name, _ in ranking.entries]
    if len(names) != 13:
        raise ValidationError(f"ranking must cover all 13 features, got {len(names)}")
    if len(set(names)) != len(names):
        raise ValidationError("ranking names features more than once")
    return names


def render_dk(
    ranking,
    variant: DkVariant,
    source_tag: str = "",
    n_top: int = 6,
    n_bottom: int = 2,
    schema: FeatureSchema | None = None,
) -> DomainKnowledge:
    """Render one domain-knowledge paragraph from a ranking.

    source_tag defaults to the display tag for ranking.source when it is one of
    the default DK families.
    """
    if variant is DkVariant.NONE:
        return DomainKnowledge(DkVariant.NONE, "", "")

    names = _ranked_names(ranking)
    if schema is not None:
        unknown = set(names) - set(schema.names)
        if unknown:
            raise ValidationError(f"ranking names features not in schema: {sorted(unknown)}")

    if not source_tag:
        source_tag = SOURCE_TAGS.get(getattr(ranking, "source", ""), "")

    if variant is DkVariant.MLFI:
        if not source_tag:
            raise ValidationError("top-features text needs a source tag")
        if n_top + n_bottom > len(names) or n_top < 2 or n_bottom < 2:
            raise ValidationError(f"cannot name top {n_top} and bottom {n_bottom} of {len(names)} features")
        top = names[:n_top]
        bottom = names[-n_bottom:]
        text = (
            f"According to a {source_tag} classifier, the most important features "
            f"in assessing heart disease risk include {', '.join(top[:-1])}, and {top[-1]}. "
            f"Features like {' and '.join(bottom)} have relatively lower importance;"
        )
        return DomainKnowledge(variant, source_tag, text)

    # MLFI_ORD: first two features get connective phrases, the rest run as a
    # comma list down to "and finally" the last.
    text = (
        "The order of features is critically important when evaluating heart "
        f"disease risk. The sequence of features according to their importance "
        f"starts with {names[0]}, followed by {names[1]}, then {', '.join(names[2:-1])}, "
        f"and finally {names[-1]};"
    )
    return DomainKnowledge(variant, source_tag, text)
