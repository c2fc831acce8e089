from ris_css.report_channel.binary_channel import (
    RelayHop,
    ReportPath,
    compose_serial,
    hop_from_snr_db,
    min_delta_ratio,
    product_form_ratio,
    transmit,
    transmit_hop_by_hop,
    transmit_many,
)

__all__ = [
    "RelayHop",
    "ReportPath",
    "compose_serial",
    "hop_from_snr_db",
    "min_delta_ratio",
    "product_form_ratio",
    "transmit",
    "transmit_hop_by_hop",
    "transmit_many",
]
