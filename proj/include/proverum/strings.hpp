// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace proverum {

/// Split on single-character separator; no empty-token suppression.
std::vector<std::string> split(std::string_view text, char sep);

/// Split on runs of spaces/tabs, dropping empty tokens.
std::vector<std::string> split_ws(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string_view trim(std::string_view text);

}  // namespace proverum
