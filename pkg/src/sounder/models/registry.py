"""
src.sounder.models.registry
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Global **model registry** mapping a *model key* (e.g. ``"hilly"``) to a
*factory*, a zero-argument callable returning a :class:`PdpModel`.

Packages or user code may register additional models at import time via
the :func:`register_model` decorator.

Built-ins provided out-of-the-box
---------------------------------
key            | source
---------------|-------------------------------------------------
``bad-urban``  | measured FM-band bad-urban fit, three clusters
``hilly``      | measured FM-band hilly-terrain fit, three clusters
``cost207-*``  | COST-207 reference profiles shipped under ``profiles/``
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from src.sounder.models.segments import PdpModel, PdpSegment, load_model

# --------------------------------------------------------------------------- #
# Public typing alias                                                         #
# --------------------------------------------------------------------------- #
ModelFactory = Callable[[], PdpModel]

PROFILE_DIR = Path(__file__).with_name("profiles")


class ModelRegistry:
    """Thread-safe singleton registry of PDP model factories."""

    _instance: "ModelRegistry | None" = None
    _instance_lock = threading.RLock()

    def __init__(self) -> None:
        self._models: Dict[str, ModelFactory] = {}
        self._lock = threading.RLock()

    @classmethod
    def instance(cls) -> "ModelRegistry":
        if cls._instance is None:
            with cls._instance_lock:
                if cls._instance is None:
                    cls._instance = cls()
        return cls._instance

    # ------------------------------------------------------------------ #
    # Public API                                                         #
    # ------------------------------------------------------------------ #
    def register(self, name: str, factory: ModelFactory) -> None:
        with self._lock:
            if name in self._models:
                raise KeyError(f"Model key '{name}' already registered")
            self._models[name] = factory

    def unregister(self, name: str) -> None:
        with self._lock:
            self._models.pop(name, None)

    def get(self, name: str) -> PdpModel:
        with self._lock:
            try:
                factory = self._models[name]
            except KeyError as exc:
                raise KeyError(
                    f"Unknown model '{name}'. Available: {', '.join(sorted(self._models))}"
                ) from exc
        return factory()

    def keys(self) -> Tuple[str, ...]:
        with self._lock:
            return tuple(self._models)


# --------------------------------------------------------------------------- #
# Helper functions wrapping the singleton                                     #
# --------------------------------------------------------------------------- #
def register_model(name: str) -> Callable[[ModelFactory], ModelFactory]:
    def _decorator(fn: ModelFactory) -> ModelFactory:
        ModelRegistry.instance().register(name, fn)
        return fn

    return _decorator


def get_model(name_or_path: str | Path) -> PdpModel:
    """Look up a registered model, or load one from a YAML/JSON file path."""
    key = str(name_or_path)
    if key in ModelRegistry.instance().keys():
        return ModelRegistry.instance().get(key)
    path = Path(key)
    if path.suffix.lower() in {".json", ".yml", ".yaml"} and path.exists():
        return PdpModel.from_file(path)
    return ModelRegistry.instance().get(key)


def available_models() -> Tuple[str, ...]:
    """Return a **tuple** of all registered model keys (read-only)."""
    return ModelRegistry.instance().keys()


def describe_models() -> List[Dict[str, object]]:
    """One summary row per registered model, sorted by key."""
    rows = []
    for key in sorted(available_models()):
        model = get_model(key)
        rows.append(
            {
                "key": key,
                "name": model.name,
                "segments": len(model.segments),
                "floor_db": model.floor_db,
                "max_delay_us": model.max_delay_us,
            }
        )
    return rows


# ------------------------------------------------------------------ #
# Built-in models                                                    #
# ------------------------------------------------------------------ #
@register_model("bad-urban")
def builtin_bad_urban() -> PdpModel:
    """Bad-urban fit: two linear clusters, then an exponential tail from 35 us."""
    return PdpModel(
        name="bad_urban",
        floor_db=-78.0,
        max_delay_us=60.0,
        segments=(
            PdpSegment(kind="linear_db", tau_lo=0.0, tau_hi=10.0, slope=-1.7, intercept=0.0),
            PdpSegment(kind="linear_db", tau_lo=10.0, tau_hi=35.0, slope=-1.76, intercept=11.6),
            PdpSegment(
                kind="exponential_db",
                tau_lo=35.0,
                tau_hi=None,
                ref="segment_relative",
                scale=55.0,
                base=0.85,
                offset=-78.0,
            ),
        ),
    )


@register_model("hilly")
def builtin_hilly() -> PdpModel:
    """Hilly-terrain fit; the -30.5 dB "else" level is the floor."""
    return PdpModel(
        name="hilly",
        floor_db=-30.5,
        max_delay_us=20.0,
        segments=(
            PdpSegment(kind="linear_db", tau_lo=0.0, tau_hi=3.0, slope=-8.6667, intercept=0.0),
            PdpSegment(kind="linear_db", tau_lo=3.0, tau_hi=6.8, slope=-4.8684, intercept=2.6053),
            PdpSegment(kind="linear_db", tau_lo=11.0, tau_hi=14.5, slope=-4.2857, intercept=31.6429),
        ),
    )


def _profile_factory(path: Path) -> ModelFactory:
    def _factory() -> PdpModel:
        return load_model(path.read_text())

    _factory.__doc__ = f"Shipped profile {path.name}."
    return _factory


def _register_profiles() -> None:
    for path in sorted(PROFILE_DIR.glob("*.yaml")):
        ModelRegistry.instance().register(path.stem, _profile_factory(path))


_register_profiles()
