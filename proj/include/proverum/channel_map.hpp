// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

namespace proverum {

/// Where each administrative flow commits its transactions.
struct ChannelMap {
    std::string federal;
    std::string external;
    std::map<std::string, std::string> cantonal;  // canton name -> channel id

    const std::string& cantonal_channel(const std::string& canton) const;
};

}  // namespace proverum
