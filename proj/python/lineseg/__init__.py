"""Text-line segmentation toolkit bindings.

The compiled module exposes the synthetic page generator, the classical
segmentation pipelines (tauch, gpi), the contour-based postprocess, and the
five-metric evaluation protocol.
"""

from ._core import (  # noqa: F401
    GpiConfig,
    SrcbParams,
    TauchConfig,
    __version__,
    anisotropic_gaussian,
    close_postprocess,
    compute_area_threshold,
    decode_instance_png,
    dilate,
    dr_ra_fm,
    elongated_blur,
    encode_instance_png,
    erode,
    evaluate_page,
    generate_page,
    instance_color,
    label_components,
    line_iu,
    normalize_labels,
    one_to_one_matches,
    otsu_binarize,
    otsu_threshold,
    pixel_iu,
    run_gpi,
    run_tauch,
    sauvola_binarize,
    srcb_postprocess,
    top_hat,
    tv_denoise,
    watershed_segment,
)
