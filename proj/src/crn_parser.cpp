#include "chemostab/crn_parser.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chemostab/error.hpp"
#include "chemostab/format.hpp"

namespace chemostab {

namespace {

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Cursor over one statement line. Columns are 1-based byte offsets.
class LineParser {
public:
    LineParser(std::string_view line, int line_no, ReactionNetwork& net)
        : line_(line), line_no_(line_no), net_(net) {}

    void parse_statement() {
        Complex lhs = parse_side();
        skip_ws();
        bool reversible = false;
        if (consume("<->")) {
            reversible = true;
        } else if (!consume("->")) {
            fail("expected '->' or '<->'");
        }
        Complex rhs = parse_side();
        skip_ws();
        if (!consume("@")) fail("expected '@' followed by a rate constant");
        std::vector<double> rates{parse_rate()};
        skip_ws();
        if (consume(",")) rates.push_back(parse_rate());
        skip_ws();
        if (at_end()) {
            // fall through
        } else if (peek() == '@') {
            fail("duplicate '@' clause");
        } else if (peek() == ',') {
            fail("at most two rate constants are allowed");
        } else {
            fail("unexpected character after rate constants");
        }
        if (lhs.empty() && rhs.empty()) {
            pos_ = 0;
            fail("reaction has no species on either side");
        }
        if (reversible && rates.size() != 2) fail("'<->' requires a forward and a backward rate");
        if (!reversible && rates.size() != 1) fail("'->' takes exactly one rate");
        net_.add_reaction(Reaction{lhs, rhs, rates[0]});
        if (reversible) net_.add_reaction(Reaction{rhs, lhs, rates[1]});
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_no_, static_cast<int>(pos_) + 1, message, std::string(line_));
    }

    bool at_end() const { return pos_ >= line_.size(); }
    char peek() const { return at_end() ? '\0' : line_[pos_]; }

    void skip_ws() {
        while (!at_end() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    bool consume(std::string_view token) {
        if (line_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    Complex parse_side() {
        skip_ws();
        Complex side;
        if (is_digit(peek())) {
            const std::size_t start = pos_;
            std::size_t p = pos_;
            while (p < line_.size() && line_[p] == '0') ++p;
            std::size_t q = p;
            while (q < line_.size() && line_[q] == ' ') ++q;
            if (p > start && (p >= line_.size() || !is_digit(line_[p])) &&
                (q >= line_.size() || !is_ident_start(line_[q]))) {
                pos_ = p;
                return side;  // the empty complex
            }
        }
        while (true) {
            skip_ws();
            int coeff = 1;
            if (is_digit(peek())) {
                const std::size_t start = pos_;
                long value = 0;
                while (is_digit(peek())) {
                    value = value * 10 + (peek() - '0');
                    ++pos_;
                    if (value > kMaxStoichiometry) {
                        pos_ = start;
                        fail("stoichiometric coefficient must be between 1 and " +
                             std::to_string(kMaxStoichiometry));
                    }
                }
                if (value < 1) {
                    pos_ = start;
                    fail("stoichiometric coefficient must be between 1 and " +
                         std::to_string(kMaxStoichiometry));
                }
                coeff = static_cast<int>(value);
                skip_ws();
            }
            if (!is_ident_start(peek())) fail("expected species name");
            const std::size_t start = pos_;
            while (is_ident_char(peek())) ++pos_;
            const std::size_t idx = net_.intern_species(std::string(line_.substr(start, pos_ - start)));
            side[idx] += coeff;
            if (side[idx] > kMaxStoichiometry) {
                pos_ = start;
                fail("combined stoichiometric coefficient exceeds " + std::to_string(kMaxStoichiometry));
            }
            skip_ws();
            if (!consume("+")) break;
        }
        return side;
    }

    double parse_rate() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-') fail("rate constants must be nonnegative");
        double value = 0.0;
        const char* first = line_.data() + pos_;
        const char* last = line_.data() + line_.size();
        auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc() || ptr == first) fail("expected a numeric rate constant");
        pos_ += static_cast<std::size_t>(ptr - first);
        if (!std::isfinite(value)) {
            pos_ = start;
            fail("rate constant must be finite");
        }
        if (is_ident_char(peek())) fail("malformed rate constant");
        return value;
    }

    std::string_view line_;
    int line_no_;
    ReactionNetwork& net_;
    std::size_t pos_ = 0;
};

std::string write_side(const ReactionNetwork& net, const Complex& side) {
    if (side.empty()) return "0";
    std::string out;
    for (auto [idx, s] : side) {
        if (!out.empty()) out += " + ";
        if (s != 1) out += std::to_string(s) + " ";
        out += net.species()[idx].name;
    }
    return out;
}

// --- .model documents -----------------------------------------------------

using nlohmann::json;

std::pair<int, int> line_col_at(std::string_view text, std::size_t offset) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string line_at(std::string_view text, int line) {
    std::size_t start = 0;
    for (int l = 1; l < line; ++l) {
        start = text.find('\n', start);
        if (start == std::string_view::npos) return {};
        ++start;
    }
    const std::size_t end = text.find('\n', start);
    return std::string(text.substr(start, end == std::string_view::npos ? end : end - start));
}

class ModelDocument {
public:
    ModelDocument(std::string_view text, std::filesystem::path base_dir)
        : text_(text), base_dir_(std::move(base_dir)) {}

    ModelSpec parse() {
        json doc;
        try {
            doc = json::parse(text_.begin(), text_.end());
        } catch (const json::parse_error& e) {
            const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
            auto [line, col] = line_col_at(text_, offset);
            std::string msg = e.what();
            if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
            throw ParseError(line, col, "malformed model document: " + msg, line_at(text_, line));
        }
        if (!doc.is_object()) fail_at(0, "model document must be a JSON object");

        static const char* const known[] = {"crn",     "alpha",  "chi",
                                            "D",       "D_tilde", "domain",
                                            "chemoattractant", "description"};
        for (const auto& [key, _] : doc.items()) {
            bool ok = false;
            for (const char* k : known) ok = ok || key == k;
            if (!ok) fail_key(key, "unknown key '" + key + "'");
        }

        ModelSpec spec;
        spec.network = read_network(require(doc, "crn"));
        spec.alpha = read_vector(doc, "alpha");
        spec.chi = read_number(doc, "chi");
        spec.D = read_number(doc, "D");
        spec.D_tilde = read_vector(doc, "D_tilde");
        spec.domain = read_domain(require(doc, "domain"));
        if (spec.network.size() == 0) throw ValidationError("network has no species");
        spec.chemoattractant = spec.network.size() - 1;
        if (doc.contains("chemoattractant")) {
            const auto& c = doc["chemoattractant"];
            if (!c.is_string()) fail_key("chemoattractant", "'chemoattractant' must be a species name");
            auto idx = spec.network.find_species(c.get<std::string>());
            if (!idx) throw ValidationError("chemoattractant '" + c.get<std::string>() + "' is not a species");
            spec.chemoattractant = *idx;
        }
        if (doc.contains("description") && !doc["description"].is_string()) {
            fail_key("description", "'description' must be a string");
        }
        spec.validate();
        return spec;
    }

private:
    [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
        auto [line, col] = line_col_at(text_, offset);
        throw ParseError(line, col, message, line_at(text_, line));
    }

    [[noreturn]] void fail_key(const std::string& key, const std::string& message) const {
        std::size_t offset = text_.find("\"" + key + "\"");
        if (offset == std::string_view::npos) offset = 0;
        fail_at(offset, message);
    }

    const json& require(const json& obj, const std::string& key) const {
        if (!obj.contains(key)) fail_at(0, "missing required key '" + key + "'");
        return obj.at(key);
    }

    double read_number(const json& obj, const std::string& key) const {
        const auto& v = require(obj, key);
        if (!v.is_number()) fail_key(key, "'" + key + "' must be a number");
        return v.get<double>();
    }

    Vector read_vector(const json& obj, const std::string& key) const {
        const auto& v = require(obj, key);
        if (!v.is_array()) fail_key(key, "'" + key + "' must be an array of numbers");
        Vector out(static_cast<Eigen::Index>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail_key(key, "'" + key + "' must be an array of numbers");
            out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
        }
        return out;
    }

    ReactionNetwork read_network(const json& crn) const {
        std::string source;
        if (crn.is_array()) {
            for (const auto& line : crn) {
                if (!line.is_string()) fail_key("crn", "'crn' array entries must be strings");
                source += line.get<std::string>();
                source += '\n';
            }
        } else if (crn.is_string()) {
            source = crn.get<std::string>();
            const bool looks_like_path = source.find('@') == std::string::npos &&
                                         source.find('\n') == std::string::npos &&
                                         source.size() > 4 &&
                                         source.compare(source.size() - 4, 4, ".crn") == 0;
            if (looks_like_path) {
                std::filesystem::path p(source);
                if (p.is_relative()) p = base_dir_ / p;
                std::ifstream in(p);
                if (!in) fail_key("crn", "cannot open reaction file '" + p.string() + "'");
                std::ostringstream ss;
                ss << in.rdbuf();
                source = ss.str();
            }
        } else {
            fail_key("crn", "'crn' must be a DSL string, an array of lines, or a .crn path");
        }
        try {
            return parse_crn(source);
        } catch (const ParseError& e) {
            throw ParseError(e.line(), e.column(), "in crn: " + e.message(), e.snippet());
        }
    }

    DomainSpec read_domain(const json& d) const {
        if (!d.is_object()) fail_key("domain", "'domain' must be an object");
        if (!d.contains("kind") || !d["kind"].is_string()) fail_key("domain", "'domain.kind' must be a string");
        const auto kind = d["kind"].get<std::string>();
        auto number = [&](const char* key) {
            if (!d.contains(key) || !d[key].is_number()) {
                fail_key(key, std::string("'domain.") + key + "' must be a number");
            }
            return d[key].get<double>();
        };
        auto only = [&](std::initializer_list<const char*> keys) {
            for (const auto& [key, _] : d.items()) {
                bool ok = false;
                for (const char* k : keys) ok = ok || key == k;
                if (!ok) fail_key(key, "unknown key 'domain." + key + "'");
            }
        };
        if (kind == "interval") {
            only({"kind", "L"});
            return Interval{number("L")};
        }
        if (kind == "rectangle") {
            only({"kind", "Lx", "Ly"});
            return Rectangle{number("Lx"), number("Ly")};
        }
        fail_key("kind", "domain kind must be 'interval' or 'rectangle'");
    }

    std::string_view text_;
    std::filesystem::path base_dir_;
};

}  // namespace

ReactionNetwork parse_crn(std::string_view text) {
    ReactionNetwork net;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t") != std::string_view::npos) {
            LineParser(line, line_no, net).parse_statement();
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return net;
}

std::string serialize_crn(const ReactionNetwork& net) {
    std::string out;
    for (const auto& r : net.reactions()) {
        out += write_side(net, r.reactants);
        out += " -> ";
        out += write_side(net, r.products);
        out += " @ ";
        out += format_double(r.rate);
        out += '\n';
    }
    return out;
}

ModelSpec parse_model(std::string_view text, const std::filesystem::path& base_dir) {
    return ModelDocument(text, base_dir).parse();
}

ModelSpec load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), path.parent_path());
}

}  // namespace chemostab
