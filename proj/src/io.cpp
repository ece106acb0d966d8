#include "votemap/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "votemap/core.hpp"

namespace votemap {

namespace {

ParseError at_line(int line, const std::string& message) {
    return ParseError("line " + std::to_string(line) + ": " + message);
}

// Splits on newlines, tolerating CRLF.  A trailing newline does not open a
// final empty line, but interior blank lines survive (they are meaningful in
// the approval format).
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : s) {
        if (ch == delim) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    return parts;
}

long long parse_int(const std::string& token, int line, const std::string& what) {
    const std::string t = trim(token);
    try {
        std::size_t used = 0;
        long long value = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument("");
        return value;
    } catch (const std::exception&) {
        throw at_line(line, "expected an integer for " + what + ", got '" + t + "'");
    }
}

double parse_real(const std::string& token, int line, const std::string& what) {
    const std::string t = trim(token);
    try {
        std::size_t used = 0;
        double value = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("");
        return value;
    } catch (const std::exception&) {
        throw at_line(line, "expected a number for " + what + ", got '" + t + "'");
    }
}

bool valid_label(const std::string& label) {
    if (label.empty()) return false;
    for (char ch : label) {
        const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
                        ch == '-' || ch == '.';
        if (!ok) return false;
    }
    return true;
}

// "k1=v1,k2=v2" into a map; the caller pops the keys it knows and treats
// leftovers as errors.
std::map<std::string, std::string> parse_params(const std::string& text,
                                                const std::string& context) {
    std::map<std::string, std::string> params;
    if (trim(text).empty()) return params;
    for (const std::string& piece : split(text, ',')) {
        const auto eq = piece.find('=');
        if (eq == std::string::npos)
            throw ParseError(context + ": expected key=value, got '" + piece + "'");
        const std::string key = trim(piece.substr(0, eq));
        const std::string value = trim(piece.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(context + ": empty key or value in '" + piece + "'");
        if (!params.emplace(key, value).second)
            throw ParseError(context + ": duplicate parameter '" + key + "'");
    }
    return params;
}

double pop_real(std::map<std::string, std::string>& params, const std::string& key,
                const std::string& context, const double* fallback = nullptr) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return *fallback;
        throw ParseError(context + ": missing parameter '" + key + "'");
    }
    try {
        std::size_t used = 0;
        double value = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        params.erase(it);
        return value;
    } catch (const std::exception&) {
        throw ParseError(context + ": parameter '" + key + "' is not a number");
    }
}

std::string pop_word(std::map<std::string, std::string>& params, const std::string& key,
                     const std::string& context, const char* fallback = nullptr) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return fallback;
        throw ParseError(context + ": missing parameter '" + key + "'");
    }
    std::string value = it->second;
    params.erase(it);
    return value;
}

void reject_leftovers(const std::map<std::string, std::string>& params,
                      const std::string& context) {
    if (!params.empty())
        throw ParseError(context + ": unknown parameter '" + params.begin()->first + "'");
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", x);
    return buffer;
}

CultureSpec parse_culture(const std::string& text) {
    const std::string t = trim(text);
    const auto colon = t.find(':');
    const std::string name = colon == std::string::npos ? t : t.substr(0, colon);
    const std::string context = "culture '" + name + "'";
    auto params = parse_params(colon == std::string::npos ? "" : t.substr(colon + 1),
                               context);

    CultureSpec spec;
    const double zero = 0.0;
    if (name == "ic") {
        spec = CultureSpec::ic();
    } else if (name == "urn") {
        spec = CultureSpec::urn(pop_real(params, "alpha", context));
    } else if (name == "mallows") {
        spec = CultureSpec::mallows(pop_real(params, "phi", context));
    } else if (name == "norm-mallows") {
        const double norm_phi = pop_real(params, "norm_phi", context);
        const double weight = pop_real(params, "weight", context, &zero);
        spec = CultureSpec::norm_mallows(norm_phi, weight);
    } else if (name == "walsh") {
        spec = CultureSpec::simple(CultureKind::Walsh);
    } else if (name == "conitzer") {
        spec = CultureSpec::simple(CultureKind::Conitzer);
    } else if (name == "spoc") {
        spec = CultureSpec::simple(CultureKind::SPOC);
    } else if (name == "single-crossing") {
        spec = CultureSpec::simple(CultureKind::SingleCrossing);
    } else if (name == "gs-balanced") {
        spec = CultureSpec::group_separable(GSTree::Balanced);
    } else if (name == "gs-caterpillar") {
        spec = CultureSpec::group_separable(GSTree::Caterpillar);
    } else if (name == "euclidean") {
        const std::string space = pop_word(params, "space", context, "interval");
        const double two = 2.0;
        const int dim = static_cast<int>(pop_real(params, "dim", context, &two));
        if (space == "interval") {
            spec = CultureSpec::euclidean(EuclideanSpace::Interval, 1);
        } else if (space == "disc") {
            spec = CultureSpec::euclidean(EuclideanSpace::Disc, 2);
        } else if (space == "square") {
            spec = CultureSpec::euclidean(EuclideanSpace::Square, 2);
        } else if (space == "cube") {
            spec = CultureSpec::euclidean(EuclideanSpace::Cube, 3);
        } else if (space == "circle") {
            spec = CultureSpec::euclidean(EuclideanSpace::Circle, 2);
        } else if (space == "sphere") {
            spec = CultureSpec::euclidean(EuclideanSpace::Sphere, 3);
        } else if (space == "ncube") {
            spec = CultureSpec::euclidean(EuclideanSpace::NCube, dim);
        } else if (space == "nsphere") {
            spec = CultureSpec::euclidean(EuclideanSpace::NSphere, dim);
        } else {
            throw ParseError(context + ": unknown space '" + space + "'");
        }
    } else if (name == "compass") {
        const std::string point = pop_word(params, "point", context);
        if (point == "id") {
            spec = CultureSpec::compass_culture(CompassKind::ID);
        } else if (point == "un") {
            spec = CultureSpec::compass_culture(CompassKind::UN);
        } else if (point == "an") {
            spec = CultureSpec::compass_culture(CompassKind::AN);
        } else if (point == "st") {
            spec = CultureSpec::compass_culture(CompassKind::ST);
        } else {
            throw ParseError(context + ": unknown compass point '" + point + "'");
        }
    } else {
        throw ParseError("unknown culture '" + name + "'");
    }
    reject_leftovers(params, context);
    return spec;
}

ApprovalCultureSpec parse_approval_culture(const std::string& text) {
    const std::string t = trim(text);
    const auto colon = t.find(':');
    const std::string name = colon == std::string::npos ? t : t.substr(0, colon);
    const std::string context = "approval culture '" + name + "'";
    auto params = parse_params(colon == std::string::npos ? "" : t.substr(colon + 1),
                               context);

    ApprovalCultureSpec spec;
    const double one = 1.0;
    if (name == "pic") {
        spec = ApprovalCultureSpec::pic(pop_real(params, "p", context));
    } else if (name == "pid") {
        spec = ApprovalCultureSpec::pid(pop_real(params, "p", context));
    } else if (name == "resampling") {
        spec = ApprovalCultureSpec::resampling(pop_real(params, "p", context),
                                               pop_real(params, "phi", context));
    } else if (name == "disjoint") {
        spec = ApprovalCultureSpec::disjoint(
            pop_real(params, "p", context), pop_real(params, "phi", context),
            static_cast<int>(pop_real(params, "g", context)));
    } else if (name == "moving") {
        spec = ApprovalCultureSpec::moving(
            pop_real(params, "p", context), pop_real(params, "phi", context),
            static_cast<int>(pop_real(params, "g", context, &one)));
    } else if (name == "noise") {
        const std::string metric = pop_word(params, "metric", context, "hamming");
        ApprovalMetric km;
        if (metric == "hamming") {
            km = ApprovalMetric::Hamming;
        } else if (metric == "jaccard") {
            km = ApprovalMetric::Jaccard;
        } else {
            throw ParseError(context + ": unknown metric '" + metric + "'");
        }
        spec = ApprovalCultureSpec::noise(pop_real(params, "p", context),
                                          pop_real(params, "phi", context), km);
    } else if (name == "euclidean-1d") {
        spec = ApprovalCultureSpec::euclidean_1d(pop_real(params, "radius", context));
    } else if (name == "euclidean-2d") {
        spec = ApprovalCultureSpec::euclidean_2d(pop_real(params, "radius", context));
    } else if (name == "truncated-urn") {
        spec = ApprovalCultureSpec::truncated_urn(pop_real(params, "p", context),
                                                  pop_real(params, "alpha", context));
    } else {
        throw ParseError("unknown approval culture '" + name + "'");
    }
    reject_leftovers(params, context);
    return spec;
}

std::string write_election(const OrdinalElection& e) {
    check_valid(e);
    std::ostringstream out;
    out << "# candidates: " << e.m() << "\n";
    for (const auto& vote : e.votes) {
        for (int i = 0; i < vote.size(); ++i) {
            if (i > 0) out << '>';
            out << vote.ranking[i];
        }
        out << "\n";
    }
    return out.str();
}

OrdinalElection parse_election(const std::string& text) {
    OrdinalElection e;
    int m = -1;
    const auto lines = split_lines(text);
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        const int line = li + 1;
        std::string s = trim(lines[li]);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string header = "# candidates:";
            if (s.rfind(header, 0) == 0)
                m = static_cast<int>(parse_int(s.substr(header.size()), line,
                                               "candidate count"));
            continue;
        }
        long long count = 1;
        const auto star = s.find('*');
        if (star != std::string::npos) {
            count = parse_int(s.substr(0, star), line, "vote count");
            if (count < 1) throw at_line(line, "vote count must be >= 1");
            s = trim(s.substr(star + 1));
        }
        PreferenceOrder vote;
        for (const std::string& token : split(s, '>'))
            vote.ranking.push_back(
                static_cast<int>(parse_int(token, line, "candidate index")));
        if (m == -1) m = vote.size();
        if (vote.size() != m)
            throw at_line(line, "ranking has " + std::to_string(vote.size()) +
                                    " candidates, expected " + std::to_string(m));
        std::vector<char> seen(m, 0);
        for (int c : vote.ranking) {
            if (c < 0 || c >= m) throw at_line(line, "candidate index out of range");
            if (seen[c]) throw at_line(line, "candidate repeated in ranking");
            seen[c] = 1;
        }
        for (long long r = 0; r < count; ++r) e.votes.push_back(vote);
    }
    if (m == -1) throw ParseError("election file contains no votes and no header");
    e.num_candidates = m;
    return e;
}

std::string write_approval_election(const ApprovalElection& e) {
    check_valid(e);
    std::ostringstream out;
    out << "# candidates: " << e.m() << "\n";
    for (const auto& vote : e.votes) {
        for (std::size_t i = 0; i < vote.approved.size(); ++i) {
            if (i > 0) out << ',';
            out << vote.approved[i];
        }
        out << "\n";
    }
    return out.str();
}

ApprovalElection parse_approval_election(const std::string& text) {
    ApprovalElection e;
    int m = -1;
    const auto lines = split_lines(text);
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        const int line = li + 1;
        const std::string s = trim(lines[li]);
        if (!s.empty() && s[0] == '#') {
            const std::string header = "# candidates:";
            if (s.rfind(header, 0) == 0)
                m = static_cast<int>(parse_int(s.substr(header.size()), line,
                                               "candidate count"));
            continue;
        }
        ApprovalBallot vote;
        if (!s.empty())
            for (const std::string& token : split(s, ','))
                vote.approved.push_back(
                    static_cast<int>(parse_int(token, line, "candidate index")));
        std::sort(vote.approved.begin(), vote.approved.end());
        for (std::size_t i = 1; i < vote.approved.size(); ++i)
            if (vote.approved[i] == vote.approved[i - 1])
                throw at_line(line, "candidate repeated in ballot");
        e.votes.push_back(std::move(vote));
    }
    if (m == -1) {
        for (const auto& vote : e.votes)
            for (int c : vote.approved) m = std::max(m, c);
        m += 1;  // empty input degenerates to m = 0
    }
    e.num_candidates = m;
    for (const auto& vote : e.votes)
        for (int c : vote.approved)
            if (c < 0 || c >= m)
                throw ParseError("approval ballot candidate out of range");
    return e;
}

PrefLibData parse_preflib_soc(const std::string& text) {
    const auto lines = split_lines(text);
    PrefLibData data;
    int li = 0;
    auto next_line = [&](const char* what) -> int {
        while (li < static_cast<int>(lines.size())) {
            const std::string s = trim(lines[li]);
            if (!s.empty() && s[0] != '#') return li++;
            ++li;
        }
        throw ParseError(std::string("unexpected end of file, expected ") + what);
    };

    {
        const int idx = next_line("candidate count");
        data.num_candidates =
            static_cast<int>(parse_int(lines[idx], idx + 1, "candidate count"));
        if (data.num_candidates < 1)
            throw at_line(idx + 1, "candidate count must be >= 1");
    }
    for (int c = 0; c < data.num_candidates; ++c) {
        const int idx = next_line("candidate name line");
        const std::string s = trim(lines[idx]);
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw at_line(idx + 1, "expected 'index,name'");
        const long long given = parse_int(s.substr(0, comma), idx + 1, "candidate index");
        if (given != c + 1)
            throw at_line(idx + 1, "candidate indices must run 1.." +
                                       std::to_string(data.num_candidates) +
                                       " in order");
        data.names.push_back(trim(s.substr(comma + 1)));
    }

    long long declared_sum = 0, unique = 0;
    {
        const int idx = next_line("vote summary line");
        const auto parts = split(trim(lines[idx]), ',');
        if (parts.size() != 3)
            throw at_line(idx + 1, "expected 'voters,votes,unique'");
        parse_int(parts[0], idx + 1, "voter count");
        declared_sum = parse_int(parts[1], idx + 1, "vote total");
        unique = parse_int(parts[2], idx + 1, "unique order count");
        if (unique < 1) throw at_line(idx + 1, "unique order count must be >= 1");
    }

    long long total = 0;
    for (long long r = 0; r < unique; ++r) {
        const int idx = next_line("vote line");
        const int line = idx + 1;
        const std::string s = trim(lines[idx]);
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw at_line(line, "expected 'count,ranking'");
        RawPrefRecord record;
        record.multiplicity =
            static_cast<int>(parse_int(s.substr(0, comma), line, "vote multiplicity"));
        if (record.multiplicity < 1)
            throw at_line(line, "vote multiplicity must be >= 1");
        total += record.multiplicity;

        // ranking with optional {a,b} tie groups
        std::size_t pos = comma + 1;
        std::vector<char> seen(data.num_candidates, 0);
        auto take_candidate = [&](const std::string& token) {
            const long long c = parse_int(token, line, "candidate index");
            if (c < 1 || c > data.num_candidates)
                throw at_line(line, "candidate index out of range");
            if (seen[c - 1]) throw at_line(line, "candidate ranked twice");
            seen[c - 1] = 1;
            return static_cast<int>(c - 1);
        };
        while (pos < s.size()) {
            while (pos < s.size() && (s[pos] == ',' || std::isspace(
                                          static_cast<unsigned char>(s[pos]))))
                ++pos;
            if (pos >= s.size()) break;
            if (s[pos] == '{') {
                const auto close = s.find('}', pos);
                if (close == std::string::npos)
                    throw at_line(line, "unclosed tie group");
                std::vector<int> group;
                for (const std::string& token :
                     split(s.substr(pos + 1, close - pos - 1), ','))
                    group.push_back(take_candidate(token));
                if (group.empty()) throw at_line(line, "empty tie group");
                record.groups.push_back(std::move(group));
                pos = close + 1;
            } else {
                auto end = s.find(',', pos);
                if (end == std::string::npos) end = s.size();
                record.groups.push_back({take_candidate(s.substr(pos, end - pos))});
                pos = end;
            }
        }
        if (record.groups.empty()) throw at_line(line, "empty ranking");
        data.records.push_back(std::move(record));
    }
    if (total != declared_sum)
        throw ParseError("vote multiplicities sum to " + std::to_string(total) +
                         " but the header declares " + std::to_string(declared_sum));
    while (li < static_cast<int>(lines.size())) {
        if (!trim(lines[li]).empty() && trim(lines[li])[0] != '#')
            throw at_line(li + 1, "unexpected content after the declared votes");
        ++li;
    }
    return data;
}

std::string write_preflib_soc(const PrefLibData& data) {
    std::ostringstream out;
    out << data.num_candidates << "\n";
    for (int c = 0; c < data.num_candidates; ++c) {
        const std::string name = c < static_cast<int>(data.names.size())
                                     ? data.names[c]
                                     : "Candidate " + std::to_string(c + 1);
        out << c + 1 << "," << name << "\n";
    }
    long long total = 0;
    for (const auto& record : data.records) total += record.multiplicity;
    out << total << "," << total << "," << data.records.size() << "\n";
    for (const auto& record : data.records) {
        out << record.multiplicity;
        for (const auto& group : record.groups) {
            out << ",";
            if (group.size() > 1) {
                out << "{";
                for (std::size_t i = 0; i < group.size(); ++i) {
                    if (i > 0) out << ",";
                    out << group[i] + 1;
                }
                out << "}";
            } else {
                out << group[0] + 1;
            }
        }
        out << "\n";
    }
    return out.str();
}

OrdinalElection complete_votes(const PrefLibData& data, Rng& rng) {
    if (data.records.empty())
        throw std::invalid_argument("complete_votes: no records to complete");
    const int m = data.num_candidates;

    // break ties uniformly and expand multiplicities into incomplete orders
    std::vector<std::vector<int>> votes;
    for (const auto& record : data.records) {
        if (record.multiplicity < 1)
            throw std::invalid_argument("complete_votes: multiplicity must be >= 1");
        for (int r = 0; r < record.multiplicity; ++r) {
            std::vector<int> order;
            for (std::vector<int> group : record.groups) {
                rng.shuffle(group);
                order.insert(order.end(), group.begin(), group.end());
            }
            votes.push_back(std::move(order));
        }
    }

    // already-complete votes act as the reference pool
    std::vector<int> pool;
    for (int i = 0; i < static_cast<int>(votes.size()); ++i)
        if (static_cast<int>(votes[i].size()) == m) pool.push_back(i);

    for (auto& vote : votes) {
        if (static_cast<int>(vote.size()) == m) continue;
        std::vector<char> ranked(m, 0);
        for (int c : vote) ranked[c] = 1;
        while (static_cast<int>(vote.size()) < m) {
            std::vector<int> matching;
            for (int i : pool)
                if (std::equal(vote.begin(), vote.end(), votes[i].begin()))
                    matching.push_back(i);
            int next;
            if (!matching.empty()) {
                const auto& ref =
                    votes[matching[rng.next_int(static_cast<int>(matching.size()))]];
                next = ref[vote.size()];
            } else {
                std::vector<int> open;
                for (int c = 0; c < m; ++c)
                    if (!ranked[c]) open.push_back(c);
                next = open[rng.next_int(static_cast<int>(open.size()))];
            }
            vote.push_back(next);
            ranked[next] = 1;
        }
    }

    OrdinalElection e;
    e.num_candidates = m;
    for (auto& vote : votes) e.votes.push_back(PreferenceOrder{std::move(vote)});
    check_valid(e);
    return e;
}

OrdinalElection restrict_top_candidates(const OrdinalElection& e, int t) {
    check_valid(e);
    if (t < 1 || t > e.m())
        throw std::invalid_argument("restrict_top_candidates: need 1 <= t <= m");
    const BordaVector borda = borda_vector(e);
    std::vector<int> order(e.m());
    for (int c = 0; c < e.m(); ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return borda.scores[a] > borda.scores[b];
    });
    std::vector<int> kept(order.begin(), order.begin() + t);
    std::sort(kept.begin(), kept.end());
    std::vector<int> relabel(e.m(), -1);
    for (int i = 0; i < t; ++i) relabel[kept[i]] = i;

    OrdinalElection out;
    out.num_candidates = t;
    for (const auto& vote : e.votes) {
        PreferenceOrder reduced;
        for (int c : vote.ranking)
            if (relabel[c] >= 0) reduced.ranking.push_back(relabel[c]);
        out.votes.push_back(std::move(reduced));
    }
    return out;
}

OrdinalElection sample_voters(const OrdinalElection& e, int n_out, Rng& rng) {
    check_valid(e);
    if (e.n() < 1)
        throw std::invalid_argument("sample_voters: source election has no votes");
    if (n_out < 0) throw std::invalid_argument("sample_voters: need n_out >= 0");
    OrdinalElection out;
    out.num_candidates = e.m();
    out.votes.reserve(n_out);
    for (int i = 0; i < n_out; ++i) out.votes.push_back(e.votes[rng.next_int(e.n())]);
    return out;
}

std::string write_distance_csv(const DistanceMatrix& dm) {
    std::ostringstream out;
    for (int i = 0; i < dm.size(); ++i) {
        if (i > 0) out << ',';
        out << dm.labels[i];
    }
    out << "\n";
    for (int i = 0; i < dm.size(); ++i) {
        for (int j = 0; j < dm.size(); ++j) {
            if (j > 0) out << ',';
            out << format_double(dm.d[i][j]);
        }
        out << "\n";
    }
    return out.str();
}

DistanceMatrix parse_distance_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("distance csv is empty");
    DistanceMatrix dm;
    dm.labels = split(trim(lines[0]), ',');
    const int k = static_cast<int>(dm.labels.size());
    if (static_cast<int>(lines.size()) != k + 1)
        throw ParseError("distance csv needs " + std::to_string(k) +
                         " data rows, found " + std::to_string(lines.size() - 1));
    for (int i = 0; i < k; ++i) {
        const auto cells = split(trim(lines[i + 1]), ',');
        if (static_cast<int>(cells.size()) != k)
            throw at_line(i + 2, "expected " + std::to_string(k) + " cells");
        std::vector<double> row;
        for (int j = 0; j < k; ++j)
            row.push_back(parse_real(cells[j], i + 2, "distance"));
        dm.d.push_back(std::move(row));
    }
    return dm;
}

std::string write_coordinates_csv(const Embedding& embedding) {
    std::ostringstream out;
    out << "label,x,y\n";
    for (std::size_t i = 0; i < embedding.labels.size(); ++i)
        out << embedding.labels[i] << ',' << format_double(embedding.points[i].x)
            << ',' << format_double(embedding.points[i].y) << "\n";
    return out.str();
}

NamedPoints parse_coordinates_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || trim(lines[0]) != "label,x,y")
        throw ParseError("coordinate csv must start with 'label,x,y'");
    NamedPoints out;
    for (int li = 1; li < static_cast<int>(lines.size()); ++li) {
        const std::string s = trim(lines[li]);
        if (s.empty()) continue;
        const auto cells = split(s, ',');
        if (cells.size() != 3) throw at_line(li + 1, "expected 'label,x,y'");
        out.labels.push_back(cells[0]);
        out.points.push_back({parse_real(cells[1], li + 1, "x"),
                              parse_real(cells[2], li + 1, "y")});
    }
    return out;
}

std::string write_quality_csv(const std::vector<std::string>& labels,
                              const std::vector<double>& monotonicity,
                              const std::vector<double>& tmr) {
    std::ostringstream out;
    out << "label,monotonicity,tmr\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << labels[i] << ',' << format_double(monotonicity[i]) << ','
            << format_double(tmr[i]) << "\n";
    return out.str();
}

std::string write_similarity_csv(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& mean,
                                 const std::vector<std::vector<double>>& stddev) {
    std::ostringstream out;
    out << "label";
    for (const auto& label : labels) out << ',' << label;
    out << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        for (std::size_t j = 0; j < labels.size(); ++j)
            out << ',' << format_double(mean[i][j]) << '/'
                << format_double(stddev[i][j]);
        out << "\n";
    }
    return out.str();
}

std::string write_names_sidecar(const std::vector<std::string>& names) {
    std::ostringstream out;
    for (std::size_t i = 0; i < names.size(); ++i) out << i << ',' << names[i] << "\n";
    return out.str();
}

std::vector<std::string> parse_names_sidecar(const std::string& text) {
    std::vector<std::string> names;
    const auto lines = split_lines(text);
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        const std::string s = trim(lines[li]);
        if (s.empty() || s[0] == '#') continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw at_line(li + 1, "expected 'index,name'");
        const long long index = parse_int(s.substr(0, comma), li + 1, "name index");
        if (index < 0 || index > 100000)
            throw at_line(li + 1, "name index out of range");
        if (static_cast<std::size_t>(index) >= names.size())
            names.resize(index + 1);
        names[index] = s.substr(comma + 1);
    }
    return names;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig config;
    std::set<std::string> labels;
    std::string section;
    const auto lines = split_lines(text);
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        const int line = li + 1;
        const std::string s = trim(lines[li]);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s == "[experiment]" || s == "[elections]") {
                section = s;
                continue;
            }
            throw at_line(line, "unknown section " + s);
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw at_line(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw at_line(line, "empty key or value");

        if (section == "[experiment]") {
            if (key == "seed") {
                config.seed = static_cast<std::uint64_t>(
                    parse_int(value, line, "seed"));
            } else if (key == "m") {
                config.m = static_cast<int>(parse_int(value, line, "m"));
            } else if (key == "n") {
                config.n = static_cast<int>(parse_int(value, line, "n"));
            } else if (key == "trials") {
                config.trials = static_cast<int>(parse_int(value, line, "trials"));
            } else if (key == "metric") {
                config.metric = value;
            } else if (key == "embedding") {
                config.embedding = value;
            } else if (key == "distances") {
                config.distances_path = value;
            } else if (key == "coordinates") {
                config.coordinates_path = value;
            } else if (key == "svg") {
                config.svg_path = value;
            } else {
                throw at_line(line, "unknown experiment key '" + key + "'");
            }
        } else if (section == "[elections]") {
            DatasetEntry entry;
            entry.label = key;
            if (!valid_label(entry.label))
                throw at_line(line, "label '" + entry.label +
                                        "' may only use letters, digits, '_', "
                                        "'-' and '.'");
            if (!labels.insert(entry.label).second)
                throw at_line(line, "duplicate label '" + entry.label + "'");
            std::istringstream tokens(value);
            std::string token;
            bool first = true;
            while (tokens >> token) {
                if (first) {
                    entry.culture = token;
                    first = false;
                    continue;
                }
                const auto teq = token.find('=');
                if (teq == std::string::npos)
                    throw at_line(line, "expected key=value, got '" + token + "'");
                const std::string tkey = token.substr(0, teq);
                const std::string tvalue = token.substr(teq + 1);
                if (tkey == "count") {
                    entry.count = static_cast<int>(parse_int(tvalue, line, "count"));
                    if (entry.count < 1)
                        throw at_line(line, "count must be >= 1");
                } else if (tkey == "m") {
                    entry.m = static_cast<int>(parse_int(tvalue, line, "m"));
                } else if (tkey == "n") {
                    entry.n = static_cast<int>(parse_int(tvalue, line, "n"));
                } else if (tkey == "seed") {
                    entry.seed = static_cast<std::uint64_t>(
                        parse_int(tvalue, line, "seed"));
                    entry.has_seed = true;
                } else if (tkey == "color") {
                    entry.color = tvalue;
                } else {
                    throw at_line(line, "unknown election key '" + tkey + "'");
                }
            }
            if (entry.culture.empty())
                throw at_line(line, "missing culture for label '" + entry.label + "'");
            config.entries.push_back(std::move(entry));
        } else {
            throw at_line(line, "content before the first section header");
        }
    }
    if (config.entries.empty())
        throw ParseError("config defines no elections");
    if (config.m < 1 || config.n < 1)
        throw ParseError("config needs m >= 1 and n >= 1");
    return config;
}

std::vector<ResolvedElection> resolve_dataset(const ExperimentConfig& config) {
    std::vector<ResolvedElection> out;
    std::set<std::string> seen;
    std::uint64_t index = 0;
    for (const auto& entry : config.entries) {
        for (int r = 0; r < entry.count; ++r) {
            ResolvedElection row;
            row.label =
                entry.count == 1 ? entry.label : entry.label + "_" + std::to_string(r);
            if (!seen.insert(row.label).second)
                throw ParseError("expanded label '" + row.label + "' collides");
            row.culture = entry.culture;
            row.m = entry.m > 0 ? entry.m : config.m;
            row.n = entry.n > 0 ? entry.n : config.n;
            const std::uint64_t base = entry.has_seed ? entry.seed : config.seed;
            row.seed = base + 0x9e3779b97f4a7c15ULL * (index + 1);
            row.color = entry.color;
            out.push_back(std::move(row));
            ++index;
        }
    }
    return out;
}

namespace {

struct Rgb {
    int r = 0, g = 0, b = 0;
};

Rgb parse_hex_color(const std::string& s) {
    auto bad = [&] {
        return std::invalid_argument("render_svg_map: bad color '" + s + "'");
    };
    if (s.size() != 7 || s[0] != '#') throw bad();
    auto nibble = [&](char ch) {
        if (ch >= '0' && ch <= '9') return ch - '0';
        if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
        if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
        throw bad();
    };
    Rgb c;
    c.r = nibble(s[1]) * 16 + nibble(s[2]);
    c.g = nibble(s[3]) * 16 + nibble(s[4]);
    c.b = nibble(s[5]) * 16 + nibble(s[6]);
    return c;
}

std::string hex_of(const Rgb& c) {
    char buffer[8];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", c.r, c.g, c.b);
    return buffer;
}

std::string blend(const std::string& low, const std::string& high, double t) {
    const Rgb a = parse_hex_color(low);
    const Rgb b = parse_hex_color(high);
    auto mix = [&](int x, int y) {
        return static_cast<int>(std::lround(x + (y - x) * t));
    };
    return hex_of({mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)});
}

}  // namespace

std::string render_svg_map(const NamedPoints& points, const MapStyle& style) {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    if (!points.points.empty()) {
        min_x = max_x = points.points[0].x;
        min_y = max_y = points.points[0].y;
        for (const auto& p : points.points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const double span_x = max_x > min_x ? max_x - min_x : 1.0;
    const double span_y = max_y > min_y ? max_y - min_y : 1.0;
    const double inner_w = style.width - 2 * style.margin;
    const double inner_h = style.height - 2 * style.margin;

    double feat_min = 0, feat_max = 0;
    bool first_feat = true;
    for (const auto& label : points.labels) {
        auto it = style.feature.find(label);
        if (it == style.feature.end()) continue;
        if (first_feat) {
            feat_min = feat_max = it->second;
            first_feat = false;
        } else {
            feat_min = std::min(feat_min, it->second);
            feat_max = std::max(feat_max, it->second);
        }
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << format_double(style.width) << "\" height=\"" << format_double(style.height)
        << "\" viewBox=\"0 0 " << format_double(style.width) << ' '
        << format_double(style.height) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < points.points.size(); ++i) {
        const auto& p = points.points[i];
        const std::string& label =
            i < points.labels.size() ? points.labels[i] : std::string();
        const double cx = style.margin + (p.x - min_x) / span_x * inner_w;
        // svg's y axis points down
        const double cy = style.margin + (max_y - p.y) / span_y * inner_h;

        std::string fill = style.default_color;
        if (auto it = style.colors.find(label); it != style.colors.end())
            fill = it->second;
        if (auto it = style.feature.find(label); it != style.feature.end()) {
            const double t = feat_max > feat_min
                                 ? (it->second - feat_min) / (feat_max - feat_min)
                                 : 0.5;
            fill = blend(style.low_color, style.high_color, t);
        }
        out << "  <circle cx=\"" << format_double(cx) << "\" cy=\""
            << format_double(cy) << "\" r=\"" << format_double(style.point_radius)
            << "\" fill=\"" << fill << "\"/>\n";
        if (style.draw_labels && !label.empty())
            out << "  <text x=\"" << format_double(cx + style.point_radius + 2)
                << "\" y=\"" << format_double(cy + 4)
                << "\" font-family=\"sans-serif\" font-size=\"11\">"
                << xml_escape(label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_svg_map(const Embedding& embedding, const MapStyle& style) {
    NamedPoints points;
    points.labels = embedding.labels;
    points.points = embedding.points;
    return render_svg_map(points, style);
}

}  // namespace votemap
