#include "effcurves/curves.hpp"

#include <cctype>
#include <regex>
#include <sstream>

namespace effcurves {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

// splits "<keyword> <id>; <rest>" and checks the keyword
std::pair<std::string, std::string> header(const std::string& line, const std::string& keyword) {
    const std::string s = trim(line);
    const auto semi = s.find(';');
    const std::string head = trim(s.substr(0, semi));
    if (head.rfind(keyword + " ", 0) != 0)
        throw CurveError("expected '" + keyword + " <id>; ...', got '" + s + "'");
    return {trim(head.substr(keyword.size() + 1)), semi == std::string::npos ? "" : trim(s.substr(semi + 1))};
}

} // namespace

std::string format_curve(const NormalCurve& c) {
    std::ostringstream os;
    os << "surface " << c.surface()->id() << "; weights";
    for (std::size_t t = 0; t < c.weights().size(); ++t) {
        const auto& w = c.weights()[t];
        os << " t" << t << ":(" << w[0] << "," << w[1] << "," << w[2] << ")";
    }
    return os.str();
}

NormalCurve parse_curve(const std::string& line, const SurfacePtr& s) {
    const std::string trimmed = trim(line);
    if (trimmed.rfind("slope ", 0) == 0) {
        const std::string& id = s->id();
        const Slope sl = Slope::parse(trim(trimmed.substr(6)));
        const auto kind = sporadic_type(*s);
        if (kind && id == sporadic_name(*kind))
            return slope_to_normal(sl, *kind);
        throw CurveError("slope records need the standard s11 or s04 triangulation, not '" + id + "'");
    }
    auto [id, rest] = header(trimmed, "surface");
    if (id != s->id())
        throw CurveError("curve is on surface '" + id + "', expected '" + s->id() + "'");
    if (rest.rfind("weights", 0) != 0)
        throw CurveError("expected 'weights' after the surface id");
    std::vector<std::array<long, 3>> w(s->triangles());
    std::vector<char> seen(s->triangles(), 0);
    static const std::regex rec(R"(t(\d+):\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))");
    std::string body = rest.substr(7);
    auto it = std::sregex_iterator(body.begin(), body.end(), rec);
    std::size_t consumed = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (!trim(body.substr(consumed, static_cast<std::size_t>(m.position()) - consumed)).empty())
            throw CurveError("unexpected text in weights: '" + body.substr(consumed) + "'");
        consumed = static_cast<std::size_t>(m.position() + m.length());
        const int t = std::stoi(m[1]);
        if (t >= s->triangles() || seen[t])
            throw CurveError("bad or repeated triangle index t" + std::to_string(t));
        seen[t] = 1;
        w[t] = {std::stol(m[2]), std::stol(m[3]), std::stol(m[4])};
    }
    if (!trim(body.substr(consumed)).empty())
        throw CurveError("unexpected text in weights: '" + body.substr(consumed) + "'");
    for (int t = 0; t < s->triangles(); ++t)
        if (!seen[t])
            throw CurveError("missing weights for t" + std::to_string(t));
    return NormalCurve(s, std::move(w));
}

std::string format_triangulation(const TriSurface& s) {
    std::ostringstream os;
    os << "triangulation " << s.id() << ";";
    for (int t = 0; t < s.triangles(); ++t) {
        os << " t" << t << ":(";
        for (int k = 0; k < 3; ++k) {
            const SideRef g = s.glued(t, k);
            os << (k ? "," : "") << "t" << g.tri << "." << g.side;
        }
        os << ")";
    }
    return os.str();
}

SurfacePtr parse_triangulation(const std::string& line) {
    auto [id, rest] = header(line, "triangulation");
    if (id.empty() || id.find(' ') != std::string::npos)
        throw CurveError("bad triangulation id '" + id + "'");
    static const std::regex rec(R"(t(\d+):\(\s*t(\d+)\.([0-2])\s*,\s*t(\d+)\.([0-2])\s*,\s*t(\d+)\.([0-2])\s*\))");
    std::vector<std::array<SideRef, 3>> glue;
    std::size_t consumed = 0;
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), rec); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (!trim(rest.substr(consumed, static_cast<std::size_t>(m.position()) - consumed)).empty())
            throw CurveError("unexpected text in triangulation: '" + rest.substr(consumed) + "'");
        consumed = static_cast<std::size_t>(m.position() + m.length());
        if (std::stoul(m[1]) != glue.size())
            throw CurveError("triangles must be listed in order t0, t1, ...");
        glue.push_back({SideRef{std::stoi(m[2]), std::stoi(m[3])}, SideRef{std::stoi(m[4]), std::stoi(m[5])},
                        SideRef{std::stoi(m[6]), std::stoi(m[7])}});
    }
    if (!trim(rest.substr(consumed)).empty())
        throw CurveError("unexpected text in triangulation: '" + rest.substr(consumed) + "'");
    return std::make_shared<const TriSurface>(id, std::move(glue));
}

} // namespace effcurves
