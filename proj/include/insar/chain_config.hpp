#pragma once

// Text format for LayerChain descriptions. One [layer] section per layer,
// in order; `key = value` lines inside; '#' starts a comment.
//
//   [layer]
//   in = 1                 # input channels            (default 1)
//   out = 1                # output channels           (default 1)
//   kernel_size = 3        # odd                       (default 1)
//   kernel = impulse       # impulse | average | diff_rows | diff_cols
//   kernel_pairs = all     # all | diagonal: which (i, j) get the canned kernel
//   weights = 0 0 0 ...    # or explicit in*out*K*K values, [i][j][row][col]
//   bias = 0.0             # out values                (default zeros)
//   activation = relu      # identity | relu | sigmoid | tanh | softplus
//   alpha = 100            # softplus warping factor (required for softplus)
//   resample = none        # none | down2 | up2
//
// `kernel` and `weights` are mutually exclusive; with neither, the layer
// uses the impulse kernel.

#include <filesystem>
#include <string>
#include <string_view>

#include "insar/cnnsim.hpp"

namespace insar {

/// Throws ConfigError (with the offending line number) on malformed input
/// and InvalidInputError when the resulting chain is inconsistent.
LayerChain parse_chain_config(std::string_view text);
LayerChain load_chain_config(const std::filesystem::path& path);

}  // namespace insar
