#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"

namespace mellnet {

// ---------------------------------------------------------------------------
// Fixture serialization: one NAME.net (or NAME.left.net / NAME.right.net)
// plus one NAME.expected.json per fixture.  Serialization is deterministic
// (sorted JSON keys, two-space indent, trailing newline) so the shipped
// corpus can be compared byte for byte against a fresh build.
// ---------------------------------------------------------------------------

inline nlohmann::json expected_to_json(const ExpectedMap& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, ev] : m) {
        nlohmann::json v;
        if (std::holds_alternative<long long>(ev.value))
            v = std::get<long long>(ev.value);
        else if (std::holds_alternative<bool>(ev.value))
            v = std::get<bool>(ev.value);
        else
            v = std::get<std::string>(ev.value);
        out[key] = {{"value", v}, {"tag", ev.tag}};
    }
    return out;
}

inline ExpectedMap expected_from_json(const nlohmann::json& j) {
    ExpectedMap out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        ExpectedValue ev;
        ev.tag = it.value().at("tag").get<std::string>();
        const nlohmann::json& v = it.value().at("value");
        if (v.is_boolean())
            ev.value = v.get<bool>();
        else if (v.is_number_integer())
            ev.value = v.get<long long>();
        else
            ev.value = v.get<std::string>();
        out[it.key()] = std::move(ev);
    }
    return out;
}

inline nlohmann::json fixture_manifest(const Fixture& f) {
    return {{"name", f.name},
            {"net", f.name + ".net"},
            {"tags", f.tags},
            {"expected", expected_to_json(f.expected)}};
}

inline nlohmann::json pair_manifest(const PairFixture& p) {
    return {{"name", p.name},
            {"pair",
             {{"left", p.name + ".left.net"},
              {"right", p.name + ".right.net"},
              {"c", p.cl},
              {"c2", p.cr}}},
            {"generator", {{"seed", p.seed}, {"index", p.index}, {"formula", p.formula}}},
            {"expected", expected_to_json(p.expected)}};
}

inline std::string json_file_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NetError("cannot open " + path.string() + " for writing");
    out << text;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NetError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_corpus(const Corpus& c, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const Fixture& f : c.singles) {
        write_text_file(dir / (f.name + ".net"), f.net_text + "\n");
        write_text_file(dir / (f.name + ".expected.json"), json_file_text(fixture_manifest(f)));
    }
    for (const PairFixture& p : c.pairs) {
        write_text_file(dir / (p.name + ".left.net"), p.left_text + "\n");
        write_text_file(dir / (p.name + ".right.net"), p.right_text + "\n");
        write_text_file(dir / (p.name + ".expected.json"), json_file_text(pair_manifest(p)));
    }
}

// A pair fixture as read back from a corpus directory.
struct LoadedPair {
    std::string name;
    std::string left_text, right_text;
    std::string cl, cr;
    ExpectedMap expected;
};

inline std::vector<LoadedPair> load_pairs(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> manifests;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string fn = entry.path().filename().string();
        if (fn.size() > 14 && fn.substr(fn.size() - 14) == ".expected.json")
            manifests.push_back(entry.path());
    }
    std::sort(manifests.begin(), manifests.end());
    std::vector<LoadedPair> out;
    for (const auto& mp : manifests) {
        nlohmann::json j = nlohmann::json::parse(read_text_file(mp));
        if (!j.contains("pair")) continue;
        LoadedPair lp;
        lp.name = j.at("name").get<std::string>();
        lp.cl = j.at("pair").at("c").get<std::string>();
        lp.cr = j.at("pair").at("c2").get<std::string>();
        auto strip = [](std::string s) {
            while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
            return s;
        };
        lp.left_text = strip(read_text_file(dir / j.at("pair").at("left").get<std::string>()));
        lp.right_text = strip(read_text_file(dir / j.at("pair").at("right").get<std::string>()));
        lp.expected = expected_from_json(j.at("expected"));
        out.push_back(std::move(lp));
    }
    return out;
}

}  // namespace mellnet
