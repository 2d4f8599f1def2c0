#include "ca/structure_file.hpp"

#include <fstream>
#include <sstream>

namespace ca {

namespace {

struct Line {
    int no = 0;
    std::string text;  // comment-stripped
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string raw;
    int no = 0;
    while (std::getline(is, raw)) {
        ++no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        out.push_back({no, raw});
    }
    return out;
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

// First whitespace-delimited word and the 1-based column where the rest
// of the line starts.
std::pair<std::string, int> first_word(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {"", 1};
    size_t e = s.find_first_of(" \t\r", b);
    if (e == std::string::npos) e = s.size();
    size_t rest = s.find_first_not_of(" \t\r", e);
    return {s.substr(b, e - b), static_cast<int>((rest == std::string::npos ? s.size() : rest) + 1)};
}

bool is_top_keyword(const std::string& w) {
    return w == "chart" || w == "metric" || w == "anchor" || w == "bivector" ||
           w == "endomorphism" || w == "threeform" || w == "connection" || w == "sections" ||
           w == "foliation" || w == "dirac";
}

[[noreturn]] void rethrow_at(const ParseError& e, int file_line, int col_offset) {
    throw ParseError(file_line, col_offset + e.col - 1, e.msg);
}

// Comma-separated expressions with their 1-based start columns.
std::vector<std::pair<std::string, int>> split_entries(const std::string& s, int from_col) {
    std::vector<std::pair<std::string, int>> out;
    int col = from_col;
    size_t pos = static_cast<size_t>(from_col - 1);
    for (;;) {
        size_t comma = s.find(',', pos);
        size_t end = comma == std::string::npos ? s.size() : comma;
        out.push_back({s.substr(pos, end - pos), col});
        if (comma == std::string::npos) break;
        pos = comma + 1;
        col = static_cast<int>(pos) + 1;
    }
    return out;
}

int parse_int(const std::string& tok, int line, int col) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected an integer, got '" + tok + "'");
    }
}

class FileParser {
public:
    explicit FileParser(const std::string& text) : lines_(split_lines(text)) {}

    StructureFile run() {
        skip_blank();
        if (done()) throw ParseError(1, 1, "empty structure file");
        parse_chart();
        while (skip_blank(), !done()) parse_block();
        finalize();
        return std::move(sf_);
    }

private:
    bool done() const { return i_ >= lines_.size(); }
    const Line& cur() const { return lines_[i_]; }
    void skip_blank() {
        while (!done() && is_blank(cur().text)) ++i_;
    }

    [[noreturn]] void err(const std::string& what, int col = 1) const {
        throw ParseError(done() ? static_cast<int>(lines_.size()) + 1 : cur().no, col, what);
    }

    void parse_chart() {
        auto [w, rest] = first_word(cur().text);
        if (w != "chart") err("expected a 'chart' block first");
        std::istringstream is(cur().text.substr(rest - 1));
        std::vector<std::string> names;
        std::string n;
        while (is >> n) {
            if (is_top_keyword(n) || n == "subspace" || n == "form" || n == "leaf" ||
                n == "transverse")
                err("coordinate name '" + n + "' is a reserved word", rest);
            names.push_back(n);
        }
        if (names.empty()) err("chart needs at least one coordinate", rest);
        sf_.chart = Chart(names);
        ++i_;
    }

    static bool is_dirac_keyword(const std::string& w) {
        return w == "subspace" || w == "form";
    }

    // Rows of comma-separated scalar expressions until the next keyword line.
    SMat read_matrix(bool stop_at_dirac_keywords = false) {
        std::vector<std::vector<Scalar>> rows;
        auto stops = [&] {
            const std::string w = first_word(cur().text).first;
            return is_top_keyword(w) || (stop_at_dirac_keywords && is_dirac_keyword(w));
        };
        for (skip_blank(); !done() && !stops(); ++i_, skip_blank()) {
            auto entries = split_entries(cur().text, 1);
            std::vector<Scalar> row;
            for (auto& [txt, col] : entries) {
                try {
                    row.push_back(parse_scalar(txt, sf_.chart));
                } catch (const ParseError& e) {
                    rethrow_at(e, cur().no, col);
                }
            }
            if (!rows.empty() && row.size() != rows.front().size())
                err("rows of different length");
            rows.push_back(std::move(row));
        }
        if (rows.empty()) err("expected at least one matrix row");
        SMat m(rows.size(), rows.front().size());
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < rows[r].size(); ++c)
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        return m;
    }

    QMat read_rational_matrix() {
        SMat m = read_matrix(/*stop_at_dirac_keywords=*/true);
        QMat q(m.rows(), m.cols());
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (!m(r, c).is_constant())
                    throw ParseError(lines_[i_ - 1].no, 1, "expected a rational constant");
                q(r, c) = Rq(m(r, c).constant_value());
            }
        return q;
    }

    template <typename Opt>
    void set_once(Opt& slot, const char* name, typename Opt::value_type v) {
        if (slot) err(std::string("duplicate '") + name + "' block");
        slot = std::move(v);
    }

    void parse_block() {
        auto [w, rest] = first_word(cur().text);
        int line = cur().no;
        if (w == "metric") {
            ++i_;
            set_once(sf_.metric, "metric", read_matrix());
        } else if (w == "anchor") {
            ++i_;
            set_once(sf_.anchor, "anchor", read_matrix());
        } else if (w == "bivector") {
            ++i_;
            set_once(sf_.bivector, "bivector", read_matrix());
        } else if (w == "endomorphism") {
            ++i_;
            set_once(sf_.endomorphism, "endomorphism", read_matrix());
        } else if (w == "threeform") {
            parse_threeform(rest);
        } else if (w == "connection") {
            parse_connection(rest);
        } else if (w == "sections") {
            ++i_;
            parse_sections();
        } else if (w == "foliation") {
            ++i_;
            parse_foliation();
        } else if (w == "dirac") {
            parse_dirac(rest);
        } else if (w == "chart") {
            throw ParseError(line, 1, "duplicate 'chart' block");
        } else {
            throw ParseError(line, 1, "unknown block '" + w + "'");
        }
    }

    void parse_threeform(int rest) {
        if (sf_.threeform) err("duplicate 'threeform' block");
        std::istringstream is(cur().text.substr(rest - 1));
        std::string tok;
        if (!(is >> tok)) err("threeform needs a rank", rest);
        int rank = parse_int(tok, cur().no, rest);
        if (rank < 3) err("threeform rank must be at least 3", rest);
        EThreeForm phi = EThreeForm::zero(rank);
        ++i_;
        for (skip_blank(); !done() && !is_top_keyword(first_word(cur().text).first);
             ++i_, skip_blank()) {
            std::istringstream row(cur().text);
            std::string ti, tj, tk;
            if (!(row >> ti >> tj >> tk)) err("threeform entry needs 'i j k expr'");
            int a = parse_int(ti, cur().no, 1);
            int b = parse_int(tj, cur().no, 1);
            int c = parse_int(tk, cur().no, 1);
            if (!(0 <= a && a < b && b < c && c < rank))
                err("threeform indices must satisfy 0 <= i < j < k < rank");
            std::string expr;
            std::getline(row, expr);
            try {
                phi.at({a, b, c}) = parse_scalar(expr, sf_.chart);
            } catch (const ParseError& e) {
                rethrow_at(e, cur().no,
                           static_cast<int>(cur().text.size() - expr.size()) + 1);
            }
        }
        sf_.threeform = std::move(phi);
    }

    void parse_connection(int rest) {
        std::istringstream is(cur().text.substr(rest - 1));
        std::string coord;
        if (!(is >> coord)) err("connection needs a coordinate name", rest);
        int idx = sf_.chart.index_of(coord);
        if (idx < 0) err("unknown coordinate '" + coord + "'", rest);
        if (sf_.connection.empty()) {
            sf_.connection.resize(sf_.chart.dim());
            conn_seen_.assign(sf_.chart.dim(), false);
        }
        if (conn_seen_[idx]) err("duplicate connection matrix for '" + coord + "'", rest);
        ++i_;
        sf_.connection[idx] = read_matrix();
        conn_seen_[idx] = true;
    }

    void parse_sections() {
        for (skip_blank(); !done() && !is_top_keyword(first_word(cur().text).first);
             ++i_, skip_blank()) {
            auto [name, rest] = first_word(cur().text);
            auto entries = split_entries(cur().text, rest);
            SVec comp(entries.size());
            for (size_t k = 0; k < entries.size(); ++k) {
                try {
                    comp(static_cast<Eigen::Index>(k)) =
                        parse_scalar(entries[k].first, sf_.chart);
                } catch (const ParseError& e) {
                    rethrow_at(e, cur().no, entries[k].second);
                }
            }
            sf_.sections.push_back({name, std::move(comp)});
        }
        if (sf_.sections.empty()) err("expected at least one section");
    }

    void parse_foliation() {
        if (sf_.foliation) err("duplicate 'foliation' block");
        Foliation fol;
        for (skip_blank(); !done() && !is_top_keyword(first_word(cur().text).first);
             ++i_, skip_blank()) {
            auto [kind, rest] = first_word(cur().text);
            std::vector<int>* side = kind == "leaf"         ? &fol.leaf
                                     : kind == "transverse" ? &fol.transverse
                                                            : nullptr;
            if (!side) err("expected 'leaf' or 'transverse'");
            std::istringstream is(cur().text.substr(rest - 1));
            std::string coord;
            while (is >> coord) {
                int idx = sf_.chart.index_of(coord);
                if (idx < 0) err("unknown coordinate '" + coord + "'", rest);
                side->push_back(idx);
            }
        }
        std::vector<int> seen(sf_.chart.dim(), 0);
        for (int idx : fol.leaf) ++seen[idx];
        for (int idx : fol.transverse) ++seen[idx];
        for (int idx = 0; idx < sf_.chart.dim(); ++idx)
            if (seen[idx] != 1)
                err("foliation must mention each coordinate exactly once");
        sf_.foliation = std::move(fol);
    }

    void parse_dirac(int rest) {
        if (sf_.dirac) err("duplicate 'dirac' block");
        std::istringstream is(cur().text.substr(rest - 1));
        std::string tok;
        if (!(is >> tok)) err("dirac needs the half-dimension n", rest);
        DiracBlock blk;
        blk.n = parse_int(tok, cur().no, rest);
        if (blk.n < 1) err("dirac n must be positive", rest);
        ++i_;
        for (skip_blank(); !done(); skip_blank()) {
            auto [kind, krest] = first_word(cur().text);
            if (kind != "subspace" && kind != "form") break;
            std::istringstream named(cur().text.substr(krest - 1));
            std::string name;
            if (!(named >> name)) err("expected a name", krest);
            int line = cur().no;
            ++i_;
            QMat m = read_rational_matrix();
            if (kind == "subspace") {
                if (m.cols() != 2 * blk.n)
                    throw ParseError(line, 1, "subspace rows must have 2n entries");
                blk.subspaces.push_back({name, std::move(m)});
            } else {
                if (m.rows() != m.cols())
                    throw ParseError(line, 1, "forms must be square matrices");
                blk.forms.push_back({name, std::move(m)});
            }
        }
        sf_.dirac = std::move(blk);
    }

    void finalize() {
        for (size_t k = 0; k < conn_seen_.size(); ++k)
            if (!conn_seen_[k])
                throw ParseError(static_cast<int>(lines_.size()) + 1, 1,
                                 "connection matrix missing for coordinate '" +
                                     sf_.chart.name(static_cast<int>(k)) + "'");
    }

    std::vector<Line> lines_;
    size_t i_ = 0;
    StructureFile sf_;
    std::vector<bool> conn_seen_;
};

void print_matrix(std::ostream& os, const SMat& m, const std::vector<std::string>& names) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << m(r, c).str(names);
        os << "\n";
    }
}

void print_matrix(std::ostream& os, const QMat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
        os << "\n";
    }
}

}  // namespace

StructureFile parse_structure(const std::string& text) { return FileParser(text).run(); }

StructureFile parse_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open structure file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_structure(buf.str());
}

std::string print_structure(const StructureFile& sf) {
    std::ostringstream os;
    const auto& names = sf.chart.names();
    os << "chart";
    for (const auto& n : names) os << " " << n;
    os << "\n";
    auto block = [&](const char* kw, const std::optional<SMat>& m) {
        if (!m) return;
        os << "\n" << kw << "\n";
        print_matrix(os, *m, names);
    };
    block("metric", sf.metric);
    block("anchor", sf.anchor);
    block("bivector", sf.bivector);
    block("endomorphism", sf.endomorphism);
    if (sf.threeform) {
        os << "\nthreeform " << sf.threeform->rank() << "\n";
        auto idxs = increasing_multi_indices(sf.threeform->rank(), 3);
        for (size_t k = 0; k < idxs.size(); ++k) {
            const Scalar& v = sf.threeform->comp()[k];
            if (v.is_zero()) continue;
            os << idxs[k][0] << " " << idxs[k][1] << " " << idxs[k][2] << " " << v.str(names)
               << "\n";
        }
    }
    for (size_t k = 0; k < sf.connection.size(); ++k) {
        os << "\nconnection " << sf.chart.name(static_cast<int>(k)) << "\n";
        print_matrix(os, sf.connection[k], names);
    }
    if (!sf.sections.empty()) {
        os << "\nsections\n";
        for (const auto& s : sf.sections) {
            os << s.name;
            for (Eigen::Index k = 0; k < s.comp.size(); ++k)
                os << (k ? ", " : " ") << s.comp(k).str(names);
            os << "\n";
        }
    }
    if (sf.foliation) {
        os << "\nfoliation\n";
        os << "leaf";
        for (int idx : sf.foliation->leaf) os << " " << sf.chart.name(idx);
        os << "\ntransverse";
        for (int idx : sf.foliation->transverse) os << " " << sf.chart.name(idx);
        os << "\n";
    }
    if (sf.dirac) {
        os << "\ndirac " << sf.dirac->n << "\n";
        for (const auto& [name, m] : sf.dirac->subspaces) {
            os << "subspace " << name << "\n";
            print_matrix(os, m);
        }
        for (const auto& [name, m] : sf.dirac->forms) {
            os << "form " << name << "\n";
            print_matrix(os, m);
        }
    }
    return os.str();
}

}  // namespace ca
