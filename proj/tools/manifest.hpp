#pragma once

// Run manifests: what was run, with which resolved options and inputs, written next to
// every output so the run can be replayed.

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krda/error.hpp"

namespace krda::cli {

inline std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for hashing");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char pair[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(pair, sizeof pair, "%02x", digest[i]);
        hex += pair;
    }
    return hex;
}

struct RunManifest {
    std::string command;
    std::vector<std::string> args;  // full argument list after --config expansion, without argv[0]
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double wall_ms = 0.0;

    nlohmann::json to_json(const char* version) const {
        nlohmann::json digests = nlohmann::json::array();
        for (const auto& p : inputs) digests.push_back({{"path", p}, {"sha256", sha256_file(p)}});
        return {{"tool", "krda"},
                {"version", version},
                {"command", command},
                {"args", args},
                {"config", config},
                {"seed", seed},
                {"inputs", digests},
                {"outputs", outputs},
                {"timings", {{"wall_ms", wall_ms}}}};
    }

    void write(const std::string& path, const char* version) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open '" + path + "' for writing");
        out << to_json(version).dump(2) << '\n';
    }
};

}  // namespace krda::cli
