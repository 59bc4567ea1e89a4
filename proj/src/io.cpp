#include "fskel/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fskel/error.hpp"

namespace fskel {

using nlohmann::json;

namespace {

double number_at(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(path + "." + key, "missing");
    if (!it->is_number()) throw ValidationError(path + "." + key, "expected a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ValidationError(path + "." + key, "must be finite");
    return v;
}

void check_ratio(double r, const std::string& path) {
    if (!(r > 0.0) || r > kMaxContraction)
        throw ValidationError(path, "contraction ratio must lie in (0, 1 - 1e-9], got " + std::to_string(r));
}

Similitude parse_map(const json& rec, const std::string& path) {
    if (!rec.is_object()) throw ValidationError(path, "expected an object");
    const std::string kind = rec.value("kind", "");
    if (kind == "complex") {
        const std::complex<double> lambda(number_at(rec, "lambda_re", path), number_at(rec, "lambda_im", path));
        const std::complex<double> t(number_at(rec, "t_re", path), number_at(rec, "t_im", path));
        check_ratio(std::abs(lambda), path + ".lambda");
        return Similitude::from_complex(lambda, t);
    }
    if (kind == "matrix") {
        const double scale = number_at(rec, "scale", path);
        check_ratio(scale, path + ".scale");
        bool reflect = false;
        if (auto it = rec.find("reflect"); it != rec.end()) {
            if (!it->is_boolean()) throw ValidationError(path + ".reflect", "expected a boolean");
            reflect = it->get<bool>();
        }
        const double angle = number_at(rec, "angle_deg", path) * std::numbers::pi / 180.0;
        return Similitude(scale, angle, reflect, {number_at(rec, "tx", path), number_at(rec, "ty", path)});
    }
    throw ValidationError(path + ".kind", "expected \"matrix\" or \"complex\"");
}

Point parse_pair(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ValidationError(path, "expected [x, y]");
    const Point p{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError(path, "must be finite");
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

}  // namespace

Ifs parse_ifs(const json& doc) {
    if (!doc.is_object()) throw ValidationError("$", "expected a JSON object");
    const std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
    const bool has_maps = doc.contains("maps");
    const bool has_single = doc.contains("single_matrix");
    if (has_maps == has_single) throw ValidationError("$", "exactly one of \"maps\" and \"single_matrix\" is required");

    std::vector<Similitude> maps;
    if (has_maps) {
        const json& arr = doc["maps"];
        if (!arr.is_array()) throw ValidationError("maps", "expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k) maps.push_back(parse_map(arr[k], "maps[" + std::to_string(k) + "]"));
    } else {
        const json& sm = doc["single_matrix"];
        if (!sm.is_object()) throw ValidationError("single_matrix", "expected an object");
        const std::complex<double> lambda(number_at(sm, "lambda_re", "single_matrix"),
                                          number_at(sm, "lambda_im", "single_matrix"));
        check_ratio(std::abs(lambda), "single_matrix.lambda");
        if (!sm.contains("digits") || !sm["digits"].is_array())
            throw ValidationError("single_matrix.digits", "expected an array of [re, im]");
        const json& digits = sm["digits"];
        for (std::size_t k = 0; k < digits.size(); ++k) {
            const Point d = parse_pair(digits[k], "single_matrix.digits[" + std::to_string(k) + "]");
            maps.push_back(Similitude::from_complex(lambda, lambda * d.as_complex()));
        }
    }
    return Ifs(std::move(maps), name);
}

Ifs parse_ifs_text(const std::string& text) { return parse_ifs(parse_json(text, "IFS document")); }

Ifs parse_ifs_file(const std::string& path) { return parse_ifs(parse_json(read_file(path), path)); }

std::vector<Point> parse_points(const json& doc) {
    const json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("points")) throw ValidationError("points", "missing");
        list = &doc["points"];
    }
    if (!list->is_array()) throw ValidationError("points", "expected an array of [x, y]");
    std::vector<Point> out;
    for (std::size_t k = 0; k < list->size(); ++k)
        out.push_back(parse_pair((*list)[k], "points[" + std::to_string(k) + "]"));
    if (out.empty()) throw ValidationError("points", "must not be empty");
    return out;
}

std::vector<Point> parse_points_file(const std::string& path) {
    return parse_points(parse_json(read_file(path), path));
}

json to_json(const Point& p) { return json::array({p.x, p.y}); }

json to_json(const HataGraph& h) {
    json edges = json::array();
    for (auto [i, j] : h.edges) edges.push_back({i, j});
    return edges;
}

json to_json(const SkeletonReport& report, double eps) {
    return {{"eps", eps},
            {"stable", report.stable},
            {"stability_residual", report.stability_residual},
            {"hata_edges", to_json(report.hata)},
            {"connected", report.connected},
            {"singleton_attractor", report.singleton_attractor},
            {"passed", report.passed()}};
}

json to_json(const Skeleton& sk, double eps) {
    json points = json::array();
    json codings = json::array();
    for (std::size_t k = 0; k < sk.points.size(); ++k) {
        points.push_back(to_json(sk.points[k]));
        json cs = json::array();
        for (const auto& c : sk.codings[k]) cs.push_back(c.to_string());
        codings.push_back(std::move(cs));
    }
    json pairs = json::array();
    for (const auto& p : sk.pairs)
        pairs.push_back({{"edge", {p.edge.first, p.edge.second}},
                         {"omega", p.omega.to_string()},
                         {"gamma", p.gamma.to_string()},
                         {"point", to_json(p.point)}});
    return {{"points", std::move(points)},
            {"codings", std::move(codings)},
            {"pairs", std::move(pairs)},
            {"hata_edges", to_json(sk.hata)},
            {"spanning_edges", to_json(sk.spanning)},
            {"verification", to_json(sk.report, eps)}};
}

namespace {

std::string key_string(const MapKey& k) {
    std::ostringstream ss;
    ss << (k.reflect ? "R" : "P");
    for (auto c : k.cells) ss << ':' << c;
    return ss.str();
}

std::string witness(const NeighborVertex& v) {
    auto w = [](const Word& word) { return word.empty() ? std::string("ε") : word_to_string(word); };
    return "S_" + w(v.inverse_word) + "^-1 S_" + w(v.forward_word);
}

}  // namespace

std::string neighbor_graph_dot(const Ifs& ifs, const NeighborGraph& graph) {
    std::ostringstream out;
    out << "digraph neighbor_graph {\n";
    out << "  // " << (ifs.name().empty() ? "ifs" : ifs.name()) << ": " << to_string(graph.status()) << ", "
        << to_string(graph.mode()) << " mode\n";
    for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
        const auto& vx = graph.vertices()[v];
        out << "  v" << v << " [key=\"" << key_string(vx.key) << "\", label=\"" << witness(vx) << "\""
            << (vx.basic ? ", shape=box" : "") << "];\n";
    }
    for (const auto& e : graph.edges())
        out << "  v" << e.from << " -> v" << e.to << " [label=\"" << to_string(e.label) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string hata_graph_dot(const Ifs& ifs, const HataGraph& h) {
    std::ostringstream out;
    out << "graph hata_graph {\n";
    out << "  // " << (ifs.name().empty() ? "ifs" : ifs.name()) << "\n";
    for (std::size_t v = 1; v <= h.n; ++v) out << "  S" << v << ";\n";
    for (auto [i, j] : h.edges) out << "  S" << i << " -- S" << j << ";\n";
    out << "}\n";
    return out.str();
}

std::string render_svg(const Ifs& ifs, const RenderOptions& options, const std::vector<Point>& skeleton_points) {
    const auto samples = sample_attractor(ifs, options.depth);
    double lo_x = samples.front().x, hi_x = lo_x, lo_y = samples.front().y, hi_y = lo_y;
    auto extend = [&](Point p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& p : samples) extend(p);
    for (const auto& p : skeleton_points) extend(p);
    const double margin = 20.0;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = (options.size_px - 2 * margin) / span;
    const double width = (hi_x - lo_x) * scale + 2 * margin;
    const double height = (hi_y - lo_y) * scale + 2 * margin;
    // SVG y grows downward
    auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
    auto sy = [&](double y) { return margin + (hi_y - y) * scale; };

    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g fill=\"#1f4e79\">\n";
    for (const auto& p : samples)
        out << "<circle class=\"sample\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"0.9\"/>\n";
    out << "</g>\n";
    if (!skeleton_points.empty()) {
        out << "<g fill=\"#c0392b\" font-family=\"sans-serif\" font-size=\"14\">\n";
        for (std::size_t k = 0; k < skeleton_points.size(); ++k) {
            const Point p = skeleton_points[k];
            out << "<circle class=\"skeleton\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\"/>\n";
            out << "<text x=\"" << sx(p.x) + 6 << "\" y=\"" << sy(p.y) - 6 << "\">a_" << (k + 1) << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fskel
