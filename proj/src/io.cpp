#include "hyplane/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyplane/errors.hpp"

namespace hyplane {

namespace {

using json = nlohmann::ordered_json;

double quantize(double angle)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", angle);
    const double q = std::strtod(buf, nullptr);
    // Rounding can push an angle just below 2 pi onto it.
    return q >= kTwoPi ? quantize(q - kTwoPi) : q;
}

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ParseError(field + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        field_error(path + key, "missing");
    }
    return *it;
}

double number(const json& v, const std::string& field)
{
    if (!v.is_number()) {
        field_error(field, "expected a number");
    }
    return v.get<double>();
}

} // namespace

std::string serialize_tiling(const Tiling& tiling)
{
    json meta;
    meta["seed"] = tiling.meta.seed;
    meta["resolution"] = tiling.meta.resolution;
    meta["jump_cutoff"] = tiling.meta.jump_cutoff;
    if (tiling.meta.thin_p) {
        meta["thin_p"] = *tiling.meta.thin_p;
    }
    meta["polygon_count"] = tiling.polygons.size();
    meta["degenerate_skipped"] = tiling.meta.degenerate_skipped;
    meta["budget_exceeded"] = tiling.meta.budget_exceeded;
    meta["randomized"] = tiling.meta.randomized;

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = to_string(tiling.kind);
    doc["meta"] = std::move(meta);
    // One polygon per line keeps large documents diffable.
    std::string text = doc.dump(1);
    text.pop_back();
    text.pop_back();
    text += ",\n \"polygons\": [";
    for (std::size_t k = 0; k < tiling.polygons.size(); ++k) {
        json apexes = json::array();
        for (const auto& b : tiling.polygons[k].apexes()) {
            apexes.push_back(quantize(b.disk_angle()));
        }
        text += (k == 0 ? "\n  " : ",\n  ") + apexes.dump();
    }
    text += tiling.polygons.empty() ? "]\n}\n" : "\n ]\n}\n";
    return text;
}

Tiling parse_tiling(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError("line " + std::to_string(line) + ": malformed JSON");
    }
    if (!doc.is_object()) {
        field_error("document", "expected an object");
    }
    const json& version = member(doc, "schema_version", "");
    if (!version.is_string()) {
        field_error("schema_version", "expected a string");
    }
    const auto v = version.get<std::string>();
    if (v.substr(0, v.find('.')) != kSchemaVersion.substr(0, kSchemaVersion.find('.'))) {
        field_error("schema_version", "unsupported major version '" + v + "'");
    }

    Tiling t;
    const json& kind = member(doc, "kind", "");
    if (!kind.is_string()) {
        field_error("kind", "expected a string");
    }
    t.kind = tiling_kind_from_string(kind.get<std::string>());

    const json& meta = member(doc, "meta", "");
    if (!meta.is_object()) {
        field_error("meta", "expected an object");
    }
    const json& seed = member(meta, "seed", "meta.");
    if (!seed.is_number_unsigned()) {
        field_error("meta.seed", "expected an unsigned integer");
    }
    t.meta.seed = seed.get<std::uint64_t>();
    t.meta.resolution = number(member(meta, "resolution", "meta."), "meta.resolution");
    t.meta.jump_cutoff = number(member(meta, "jump_cutoff", "meta."), "meta.jump_cutoff");
    if (meta.contains("thin_p")) {
        t.meta.thin_p = number(meta["thin_p"], "meta.thin_p");
    }
    auto flag = [&](const char* key) {
        const json& f = member(meta, key, "meta.");
        if (!f.is_boolean()) {
            field_error(std::string("meta.") + key, "expected a boolean");
        }
        return f.get<bool>();
    };
    t.meta.budget_exceeded = flag("budget_exceeded");
    t.meta.randomized = flag("randomized");
    const json& skipped = member(meta, "degenerate_skipped", "meta.");
    if (!skipped.is_number_unsigned()) {
        field_error("meta.degenerate_skipped", "expected an unsigned integer");
    }
    t.meta.degenerate_skipped = skipped.get<std::size_t>();

    const json& polys = member(doc, "polygons", "");
    if (!polys.is_array()) {
        field_error("polygons", "expected an array");
    }
    t.polygons.reserve(polys.size());
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const std::string field = "polygons[" + std::to_string(k) + "]";
        const json& apexes = polys[k];
        if (!apexes.is_array() || apexes.size() < 3 || apexes.size() > 4) {
            field_error(field, "expected 3 or 4 apex angles");
        }
        std::array<BoundaryPoint, 4> pts;
        for (std::size_t i = 0; i < apexes.size(); ++i) {
            pts[i] = BoundaryPoint::on_disk(number(apexes[i], field + "[" + std::to_string(i) + "]"));
        }
        try {
            t.polygons.emplace_back(std::span<const BoundaryPoint>(pts.data(), apexes.size()));
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    }
    const json& count = member(meta, "polygon_count", "meta.");
    if (!count.is_number_unsigned() || count.get<std::size_t>() != t.polygons.size()) {
        field_error("meta.polygon_count", "does not match the polygon list");
    }
    t.meta.polygon_count = t.polygons.size();
    return t;
}

void write_tiling(const Tiling& tiling, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out << serialize_tiling(tiling);
    if (!out) {
        throw Error("write to " + path.string() + " failed");
    }
}

Tiling read_tiling(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tiling(buf.str());
}

} // namespace hyplane
