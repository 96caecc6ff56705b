from .sequence import SequenceSpec

__all__ = ["SequenceSpec"]
