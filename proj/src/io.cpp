#include "triqal/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>

namespace triqal {

using nlohmann::json;

namespace {

json scalar_to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(where, "expected a number or a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string leg_path(const std::string& field, std::span<const int> index, std::size_t depth) {
    std::string out = field;
    for (std::size_t k = 0; k < depth; ++k) out += "[" + std::to_string(index[k]) + "]";
    return out;
}

double parse_real(std::string_view s, std::string_view whole, bool imaginary = false) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() && imaginary) return negative ? -1.0 : 1.0;  // bare "i" / "-i"
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    // from_chars would accept a second sign, as in "--1"
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.front() == '-') {
        throw TensorError("not a complex literal: '" + std::string(whole) + "'");
    }
    return negative ? -value : value;
}

}  // namespace

json tensor_to_json(const DenseTensor& t) {
    const int n = t.dim();
    std::vector<int> index(t.rank(), 0);
    std::function<json(std::size_t)> build = [&](std::size_t depth) -> json {
        if (depth == t.rank()) return scalar_to_json(t(index));
        json arr = json::array();
        for (int v = 0; v < n; ++v) {
            index[depth] = v;
            arr.push_back(build(depth + 1));
        }
        return arr;
    };
    return build(0);
}

DenseTensor tensor_from_json(const json& j, int n, std::string_view signature,
                             const std::string& field) {
    DenseTensor t(n, parse_signature(signature));
    std::vector<int> index(t.rank(), 0);
    std::function<void(const json&, std::size_t)> fill = [&](const json& node, std::size_t depth) {
        if (depth == t.rank()) {
            t(index) = scalar_from_json(node, leg_path(field, index, depth));
            return;
        }
        if (!node.is_array() || node.size() != static_cast<std::size_t>(n)) {
            throw ParseError(leg_path(field, index, depth),
                             "expected an array of length n = " + std::to_string(n));
        }
        for (int v = 0; v < n; ++v) {
            index[depth] = v;
            fill(node[static_cast<std::size_t>(v)], depth + 1);
        }
    };
    fill(j, 0);
    return t;
}

json to_json(const AlgebraFile& file) {
    json j;
    j["n"] = file.n();
    j["P"] = file.P.map();
    j["Qbar"] = tensor_to_json(file.Qbar);
    if (file.Qm) j["Qm"] = tensor_to_json(*file.Qm);
    if (file.h) j["h"] = tensor_to_json(*file.h);
    return j;
}

AlgebraFile algebra_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("n", "missing or not an integer");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxDim) throw ParseError("n", "must be in 1.." + std::to_string(kMaxDim));

    if (!j.contains("P")) throw ParseError("P", "missing");
    const json& jp = j["P"];
    if (!jp.is_array() || jp.size() != static_cast<std::size_t>(n)) {
        throw ParseError("P", "expected an array of n integers");
    }
    std::vector<int> map;
    for (const json& v : jp) {
        if (!v.is_number_integer()) throw ParseError("P", "entries must be integers");
        map.push_back(v.get<int>());
    }
    std::optional<BasisPermutation> p;
    try {
        p.emplace(std::move(map));
    } catch (const TensorError& e) {
        throw ParseError("P", e.what());
    }

    if (!j.contains("Qbar")) throw ParseError("Qbar", "missing");
    AlgebraFile file{*p, tensor_from_json(j["Qbar"], n, "lluu", "Qbar"), std::nullopt, std::nullopt};
    if (j.contains("Qm") && !j["Qm"].is_null()) file.Qm = tensor_from_json(j["Qm"], n, "lllu", "Qm");
    if (j.contains("h") && !j["h"].is_null()) file.h = tensor_from_json(j["h"], n, "ll", "h");
    return file;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TensorError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw TensorError("cannot write '" + path.string() + "'");
    out << j.dump(1) << '\n';
}

AlgebraFile load_algebra(const std::filesystem::path& path) { return algebra_from_json(read_json(path)); }

void save_algebra(const std::filesystem::path& path, const AlgebraFile& file) {
    write_json(path, to_json(file));
}

DenseTensor load_form(const std::filesystem::path& path, int n) {
    const json j = read_json(path);
    if (j.is_object()) {
        if (!j.contains("h")) throw ParseError("h", "missing");
        return tensor_from_json(j["h"], n, "ll", "h");
    }
    return tensor_from_json(j, n, "ll", "h");
}

json full_to_json(const FullThreeAlgebra& full, const BasisPermutation& p, const BilinearForm& form) {
    json j;
    j["n"] = p.dim();
    j["P"] = p.map();
    j["h"] = tensor_to_json(form.h());
    j["m04"] = tensor_to_json(full.m04);
    j["m13"] = tensor_to_json(full.m13);
    j["m22"] = tensor_to_json(full.m22);
    j["m31"] = tensor_to_json(full.m31);
    j["m40"] = tensor_to_json(full.m40);
    return j;
}

json network_to_json(const ContractionNetwork& net) {
    json tetra = json::array();
    for (const Tetra& t : net.tetra) {
        json faces = json::array();
        for (const Face& f : t.faces) {
            json vertices = json::array();
            for (const Vertex& v : f.vertices) vertices.push_back(v.name());
            faces.push_back({{"vertices", vertices},
                             {"sign", f.sign == FaceSign::input ? "-" : "+"},
                             {"bond", f.bond}});
        }
        tetra.push_back({{"kind", t.kind == TetraKind::north ? "N" : "S"}, {"l", t.l}, {"faces", faces}});
    }
    json bonds = json::array();
    for (const Bond& b : net.bonds) bonds.push_back({{"id", b.id}, {"mediator", to_string(b.mediator)}});
    return {{"p", net.p}, {"q", net.q}, {"tetra", tetra}, {"bonds", bonds}};
}

Scalar parse_complex(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ') s.push_back(c);
    }
    if (s.empty()) throw TensorError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(s, text, true)};
    const std::string_view sv = s;
    return {parse_real(sv.substr(0, split), text), parse_real(sv.substr(split), text, true)};
}

}  // namespace triqal
