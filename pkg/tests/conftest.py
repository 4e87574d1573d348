import random

import pytest

from traincat.perm_core import ColoredPerm


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_single(rng, max_index=6):
    size = rng.randint(0, max_index)
    images = list(range(1, size + 1))
    rng.shuffle(images)
    return ColoredPerm.from_images(images)
