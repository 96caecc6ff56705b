import numpy as np
from faker import Faker

from src.sounder.estimator.pdp import Pdp
from src.sounder.models.segments import PdpModel, delay_grid, eval_alpha
from src.sounder.models.taps import TapSet
from src.sounder.waveform import SoundingSequence, generate_msequence


fake = Faker()
Faker.seed(0)


def random_tap_set(max_delay_us: int = 40, n_taps: int | None = None) -> TapSet:
    """Return an on-grid TapSet: a 0 dB tap at 0 us plus weaker taps drawn with Faker."""
    n_taps = n_taps or fake.random_int(min=2, max=6)
    delays = sorted(fake.random_sample(elements=list(range(1, max_delay_us + 1)), length=n_taps - 1))
    powers = [fake.random_int(min=-2500, max=-300) / 100 for _ in delays]
    return TapSet.from_arrays([0.0, *map(float, delays)], [0.0, *powers])


def small_sequence(order: int = 7, pad_len: int = 9) -> SoundingSequence:
    """A short sequence for tests that need many frames."""
    return generate_msequence(order, pad_len=pad_len)


def model_pdp(model: PdpModel, spacing_us: float = 1.0) -> Pdp:
    """Noiseless PDP holding *model* evaluated on its own delay grid."""
    grid = np.array(delay_grid(model.max_delay_us, spacing_us))
    power = np.array([10 ** (eval_alpha(model, t) / 10) for t in grid])
    return Pdp(delays_us=grid, power_linear=power, n_averaged=1, delay_resolution_us=spacing_us)


def complex_noise(n: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.standard_normal((n, 2))
    return (draws[:, 0] + 1j * draws[:, 1]) / np.sqrt(2)
