from .capture import IqCapture, import_csv_iq, read_capture, write_capture
from .tables import read_pdp, write_model_grid, write_pdp, write_residuals

__all__ = [
    "IqCapture",
    "import_csv_iq",
    "read_capture",
    "write_capture",
    "read_pdp",
    "write_model_grid",
    "write_pdp",
    "write_residuals",
]
