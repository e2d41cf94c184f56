// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/topology.hpp"

#include "proverum/errors.hpp"
#include "proverum/strings.hpp"

namespace proverum {

TopologyConfig TopologyConfig::default_prototype() {
    TopologyConfig cfg;
    cfg.authorities = {
        {"Confederation", Role::Confederation, std::nullopt},
        {"Zurich", Role::Canton, std::nullopt},
        {"Bern", Role::Canton, std::nullopt},
        {"Uster", Role::Municipality, "Zurich"},
        {"Dietikon", Role::Municipality, "Zurich"},
        {"Koeniz", Role::Municipality, "Bern"},
        {"Thun", Role::Municipality, "Bern"},
        {"SwissPost", Role::SwissPost, std::nullopt},
        {"ESP1", Role::Esp, std::nullopt},
    };
    cfg.channels = {
        {"federal",
         "federal",
         "",
         {"Confederation", "Zurich", "Bern", "Uster", "Dietikon", "Koeniz", "Thun"},
         {Chaincode::CM, Chaincode::RP}},
        {"canton-zurich",
         "cantonal",
         "Zurich",
         {"Zurich", "Uster", "Dietikon", "Confederation"},
         {Chaincode::CM, Chaincode::RP}},
        {"canton-bern",
         "cantonal",
         "Bern",
         {"Bern", "Koeniz", "Thun", "Confederation"},
         {Chaincode::CM, Chaincode::RP}},
        {"external",
         "external",
         "",
         {"Confederation", "Zurich", "Bern", "Uster", "Dietikon", "Koeniz", "Thun", "SwissPost",
          "ESP1"},
         {Chaincode::CM}},
    };
    return cfg;
}

TopologyConfig TopologyConfig::parse(const std::string& text) {
    TopologyConfig cfg;
    cfg.public_options = {1, 2, 3};
    int line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> tok = split_ws(line);
        auto fail = [&](const std::string& why) {
            throw Error(Errc::ParseError,
                        "topology line " + std::to_string(line_no) + ": " + why);
        };
        if (tok[0] == "authority") {
            if (tok.size() < 3) fail("authority needs <name> <role> [parent]");
            auto role = role_from_string(tok[2]);
            if (!role) fail("unknown role " + tok[2]);
            AuthoritySpec spec;
            spec.name = tok[1];
            spec.role = *role;
            if (tok.size() > 3) spec.parent = tok[3];
            cfg.authorities.push_back(std::move(spec));
        } else if (tok[0] == "channel") {
            if (tok.size() < 5) fail("channel needs <id> <kind> <chaincodes> <member>...");
            ChannelSpec spec;
            spec.id = tok[1];
            spec.kind = tok[2];
            std::size_t next = 3;
            if (spec.kind == "cantonal") {
                if (!tok[3].starts_with("canton=")) fail("cantonal channel needs canton=<name>");
                spec.canton = tok[3].substr(7);
                next = 4;
            }
            for (const std::string& cc : split(tok[next], ',')) {
                auto code = chaincode_from_string(cc);
                if (!code) fail("unknown chaincode " + cc);
                spec.chaincodes.insert(*code);
            }
            for (std::size_t i = next + 1; i < tok.size(); ++i) spec.members.insert(tok[i]);
            if (spec.members.empty()) fail("channel needs members");
            cfg.channels.push_back(std::move(spec));
        } else if (tok[0] == "peers") {
            if (tok.size() != 2) fail("peers needs <n>");
            cfg.peers_per_authority = std::stoi(tok[1]);
        } else if (tok[0] == "publicenv") {
            if (tok.size() != 2) fail("publicenv needs <options>");
            cfg.public_options.clear();
            for (const std::string& o : split(tok[1], ',')) {
                int opt = std::stoi(o);
                if (opt < 1 || opt > 3) fail("public env option out of range");
                cfg.public_options.insert(opt);
            }
        } else {
            fail("unknown directive " + tok[0]);
        }
    }
    if (cfg.authorities.empty()) throw Error(Errc::ParseError, "topology has no authorities");
    return cfg;
}

std::vector<std::string> TopologyConfig::government_authorities() const {
    std::vector<std::string> out;
    for (const AuthoritySpec& a : authorities) {
        if (is_government(a.role)) out.push_back(a.name);
    }
    return out;
}

const TopologyConfig::AuthoritySpec* TopologyConfig::find_authority(
    const std::string& name) const {
    for (const AuthoritySpec& a : authorities) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

}  // namespace proverum
