#pragma once

// JSON documents for trained models. Doubles are written in shortest round-trip form, so
// save -> load reproduces every parameter bit for bit.

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krda/error.hpp"
#include "krda/nade.hpp"

namespace krda {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelFormatName = "krda-model";

namespace detail {

inline nlohmann::json affine_to_json(const AffineMap& m) {
    return {{"rows", m.weight.rows()}, {"cols", m.weight.cols()}, {"weight", m.weight.data()},
            {"bias", m.bias}};
}

inline nlohmann::json head_to_json(const DomainHead& h) {
    return {{"rescale", h.rescale},
            {"out_w", affine_to_json(h.out_w)},
            {"out_mu", affine_to_json(h.out_mu)},
            {"out_logvar", affine_to_json(h.out_logvar)}};
}

inline std::vector<double> read_array(const nlohmann::json& j, const char* key, std::size_t expected) {
    if (!j.contains(key)) throw ParseError(std::string("model document lacks '") + key + "'");
    auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != expected) throw DimensionMismatch(std::string("model array '") + key + "'", expected, v.size());
    return v;
}

inline AffineMap affine_from_json(const nlohmann::json& j, std::size_t out, std::size_t in) {
    return {Matrix(out, in, read_array(j, "weight", out * in)), read_array(j, "bias", out)};
}

inline DomainHead head_from_json(const nlohmann::json& j, std::size_t d, std::size_t H, std::size_t N) {
    return {read_array(j, "rescale", d), affine_from_json(j.at("out_w"), N, H),
            affine_from_json(j.at("out_mu"), N, H), affine_from_json(j.at("out_logvar"), N, H)};
}

}  // namespace detail

inline nlohmann::json model_to_json(const KrdaModel& m) {
    return {{"format", kModelFormatName},
            {"format_version", kModelFormatVersion},
            {"d", m.d},
            {"hidden", m.hidden},
            {"components", m.components},
            {"backbone", {{"c", m.params.backbone.c}, {"W", m.params.backbone.W.data()}}},
            {"source_head", detail::head_to_json(m.params.source_head)},
            {"target_head", detail::head_to_json(m.params.target_head)},
            {"standardizer", {{"mean", m.standardizer.mean}, {"std", m.standardizer.stddev}}}};
}

inline KrdaModel model_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", std::string{}) != kModelFormatName)
            throw ParseError("not a krda model document");
        if (j.at("format_version").get<int>() != kModelFormatVersion)
            throw ParseError("unsupported model format version");
        KrdaModel m;
        m.d = j.at("d").get<std::size_t>();
        m.hidden = j.at("hidden").get<std::size_t>();
        m.components = j.at("components").get<std::size_t>();
        if (m.d == 0 || m.hidden == 0 || m.components == 0)
            throw ParseError("model dimensions must be positive");
        const auto& bb = j.at("backbone");
        m.params.backbone.c = detail::read_array(bb, "c", m.hidden);
        m.params.backbone.W = Matrix(m.hidden, m.d, detail::read_array(bb, "W", m.hidden * m.d));
        m.params.source_head = detail::head_from_json(j.at("source_head"), m.d, m.hidden, m.components);
        m.params.target_head = detail::head_from_json(j.at("target_head"), m.d, m.hidden, m.components);
        const auto& st = j.at("standardizer");
        m.standardizer.mean = detail::read_array(st, "mean", m.d);
        m.standardizer.stddev = detail::read_array(st, "std", m.d);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }
}

inline void save_model(const KrdaModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << model_to_json(m).dump(1) << '\n';
}

inline KrdaModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

}  // namespace krda
