"""Disease taxonomy and binary verdict labels used across the toolkit."""

from enum import Enum


class Disease(str, Enum):
    LEAF_SCALD = "leaf_scald"
    RED_STRIPE = "red_stripe"
    MOSAIC = "mosaic"

    def __str__(self) -> str:
        return self.value


HEALTHY = "healthy"
INFECTED = "infected"

# labels.csv uses "none" in the disease column for healthy rows
NO_DISEASE = "none"
