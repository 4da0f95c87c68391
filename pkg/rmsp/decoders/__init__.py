"""Full-code decoders: SP-RLD family and the permuted SSC-FHT baseline."""

from rmsp.decoders.sp_rld import (
    ens_ssp_rld_decode,
    perm_metric,
    select_permutation,
    sp_rld_decode,
    sp_rld_recurse,
    ssp_rld_decode,
)
from rmsp.decoders.ssc_fht import aut_ssc_fht_decode, ssc_fht_decode

__all__ = [
    "aut_ssc_fht_decode",
    "ens_ssp_rld_decode",
    "perm_metric",
    "select_permutation",
    "sp_rld_decode",
    "sp_rld_recurse",
    "ssc_fht_decode",
    "ssp_rld_decode",
]
