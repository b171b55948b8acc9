from dataclasses import dataclass
from typing import Sequence

import numpy as np

from configuration import DEFAULT_CLICK_THROUGH_RATE, POSITION_CLICK_COUNTS, LabSettings


@dataclass(frozen=True)
class ClickModel:
    """Independent per-position click probabilities (position-biased user)."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        if any(not 0.0 <= p <= 1.0 for p in self.probabilities):
            raise ValueError(f"Click probabilities must be between 0 and 1: {self.probabilities}")

    def __len__(self) -> int:
        return len(self.probabilities)

    @classmethod
    def from_counts(
        cls, counts: Sequence[int] = POSITION_CLICK_COUNTS, click_through_rate: float = DEFAULT_CLICK_THROUGH_RATE
    ) -> "ClickModel":
        """
        Position p gets ``count(p) / sum(counts)`` of all clicks, scaled so that the expected
        clicks per displayed row equal ``click_through_rate``.
        """
        total = sum(counts)
        if total <= 0:
            return cls(tuple(0.0 for _ in counts))
        expected_clicks = click_through_rate * len(counts)
        return cls(tuple(count / total * expected_clicks for count in counts))

    @classmethod
    def from_settings(cls, settings: LabSettings) -> "ClickModel":
        if settings.click_probabilities is not None:
            return cls(tuple(settings.click_probabilities))
        return cls.from_counts(settings.click_counts, settings.click_through_rate)

    def sample(self, length: int, rng: np.random.Generator) -> list[int]:
        """Clicked positions (1-based) for a page of ``length`` rows."""
        if length > len(self):
            raise ValueError(f"Click model covers {len(self)} positions, page has {length}")
        draws = rng.random(length)
        return [int(position) + 1 for position in np.nonzero(draws < np.asarray(self.probabilities[:length]))[0]]
