#include "jtugms/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace jtugms {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const nlohmann::json& config) { return fnv1a_hex(config.dump()); }

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& tok, double& out) {
    const std::string t = trim(tok);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

bool parse_int(const std::string& tok, long& out) {
    const std::string t = trim(tok);
    const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
    return !t.empty() && r.ec == std::errc() && r.ptr == t.data() + t.size();
}

void append_stamp(std::ostringstream& os, const Stamp* stamp, const char* prefix) {
    if (stamp) os << prefix << " config_hash=" << stamp->config_hash << " seed=" << stamp->seed << '\n';
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool first_data = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(t);
        std::string tok;
        bool ok = true;
        while (std::getline(ss, tok, ',')) {
            double v = 0.0;
            if (!parse_double(tok, v) || !std::isfinite(v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (first_data) {
                first_data = false;  // header line
                continue;
            }
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected comma-separated finite reals");
        }
        first_data = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(rows.front().size()) +
                          " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path.string() + ": no data rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return m;
}

std::string matrix_csv(const Eigen::MatrixXd& m, const Stamp* stamp) {
    std::ostringstream os;
    append_stamp(os, stamp, "#");
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            os << (c ? "," : "") << buf;
        }
        os << '\n';
    }
    return os.str();
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    Dataset d{read_matrix_csv(path)};
    if (d.n() < 2) throw IoError(path.string() + ": dataset needs at least two rows");
    return d;
}

GaussianModel read_precision_csv(const std::filesystem::path& path) {
    Eigen::MatrixXd m = read_matrix_csv(path);
    if (m.rows() != m.cols()) throw IoError(path.string() + ": precision matrix must be square");
    try {
        return GaussianModel(std::move(m));
    } catch (const std::domain_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

Graph parse_edge_list(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    long p = -1;
    EdgeSet edges;
    auto fail = [&](const std::string& msg) { throw IoError(origin + ":" + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (p < 0) {
            if (t.rfind("p=", 0) != 0 || !parse_int(t.substr(2), p) || p < 0) fail("expected header 'p=<num_vertices>'");
            continue;
        }
        const auto tab = t.find_first_of("\t ");
        long u = 0, v = 0;
        if (tab == std::string::npos || !parse_int(t.substr(0, tab), u) || !parse_int(t.substr(tab + 1), v))
            fail("expected '<u>\\t<v>'");
        if (u < 0 || v < 0 || u >= p || v >= p) fail("vertex out of range 0.." + std::to_string(p - 1));
        if (u >= v) fail("edges must satisfy u < v");
        edges.insert({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (p < 0) throw IoError(origin + ": missing header 'p=<num_vertices>'");
    VertexSet vs(static_cast<std::size_t>(p));
    for (long k = 0; k < p; ++k) vs[static_cast<std::size_t>(k)] = static_cast<Vertex>(k);
    return Graph(vs, edges);
}

Graph read_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path), path.string()); }

std::string edge_list_text(int p, const EdgeSet& edges, const Stamp* stamp) {
    std::ostringstream os;
    append_stamp(os, stamp, "#");
    os << "p=" << p << '\n';
    for (const Edge& e : edges) os << e.u << '\t' << e.v << '\n';
    return os.str();
}

std::string edge_list_text(const Graph& g, const Stamp* stamp) { return edge_list_text(g.universe(), g.edges(), stamp); }

std::string stamped_dot(const std::string& dot, const Stamp& stamp) {
    std::ostringstream os;
    append_stamp(os, &stamp, "//");
    os << dot;
    return os.str();
}

}  // namespace jtugms
