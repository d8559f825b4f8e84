#include "qaforge/clone_detect.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qaforge/suffix_array.h"

using nlohmann::json;

namespace qaforge {

void CloneParams::validate() const {
    if (min_length < 2) throw FatalError("clone min_length must be >= 2");
    if (max_gaps < 0) throw FatalError("clone max_gaps must be >= 0");
    if (max_gap_ratio < 0.0 || max_gap_ratio >= 1.0) throw FatalError("max_gap_ratio must be in [0, 1)");
}

namespace {

// The corpus flattened to one code sequence: per-unit hashes of the token id
// vectors, files separated by unique negative sentinels.
struct FlatCorpus {
    std::vector<int> seq;
    std::vector<int> file_start;  // offset of each file's first unit in seq
    std::vector<int> pos_file;    // seq position -> file id (-1 on sentinels)
    std::vector<int> pos_unit;    // seq position -> unit index within file
};

FlatCorpus flatten(const Corpus& corpus) {
    FlatCorpus flat;
    // Unit equality = token id vector equality; intern each distinct vector.
    std::map<std::vector<int>, int> unit_codes;
    int sentinel = -1;
    for (size_t f = 0; f < corpus.files.size(); ++f) {
        if (f > 0) {
            flat.seq.push_back(sentinel--);
            flat.pos_file.push_back(-1);
            flat.pos_unit.push_back(-1);
        }
        flat.file_start.push_back(static_cast<int>(flat.seq.size()));
        for (const auto& u : corpus.files[f].units) {
            auto [it, inserted] = unit_codes.emplace(u.token_ids, static_cast<int>(unit_codes.size()));
            flat.seq.push_back(it->second);
            flat.pos_file.push_back(static_cast<int>(f));
            flat.pos_unit.push_back(u.index);
        }
    }
    return flat;
}

uint64_t fnv1a_step(uint64_t hash, const void* data, size_t len) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string to_hex(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

bool in_gap(const std::vector<GapSpan>& gaps, int unit) {
    for (const auto& g : gaps)
        if (unit >= g.start_unit && unit <= g.end_unit) return true;
    return false;
}

std::vector<CloneClass> classes_from_repeats(const Corpus& corpus, const FlatCorpus& flat,
                                             const std::vector<Repeat>& repeats) {
    std::vector<CloneClass> classes;
    classes.reserve(repeats.size());
    for (const auto& r : repeats) {
        CloneClass c;
        c.length = r.length;
        c.gapped = false;
        for (int pos : r.positions) {
            CloneInstance inst;
            inst.file_id = flat.pos_file[pos];
            inst.start_unit = flat.pos_unit[pos];
            inst.end_unit = inst.start_unit + r.length - 1;
            c.instances.push_back(inst);
        }
        std::sort(c.instances.begin(), c.instances.end(), [](const CloneInstance& a, const CloneInstance& b) {
            return std::tie(a.file_id, a.start_unit) < std::tie(b.file_id, b.start_unit);
        });
        c.fingerprint = fingerprint_instance(corpus, c.instances.front());
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(), [](const CloneClass& a, const CloneClass& b) {
        if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
        if (a.length != b.length) return a.length > b.length;
        return a.instances.front().start_unit < b.instances.front().start_unit;
    });
    return classes;
}

}  // namespace

std::vector<CloneClass> detect_clones(const Corpus& corpus, const CloneParams& params) {
    params.validate();
    if (corpus.total_units() == 0) return {};
    FlatCorpus flat = flatten(corpus);
    std::vector<Repeat> repeats = maximal_repeats(flat.seq, params.min_length);
    return classes_from_repeats(corpus, flat, repeats);
}

namespace {

// ---- gapped detection -------------------------------------------------
//
// Seeds are exact maximal matches. A merged clone of matched length >=
// min_length with at most max_gaps gaps contains an exact piece of at least
// min_length / (max_gaps + 1) units, so classes at that length suffice as
// anchors. Each anchor instance pair is extended greedily: exact extension
// first, then gap jumps bounded by the gap-ratio budget.

struct Piece {
    int a = 0;
    int b = 0;
    int len = 0;
};

struct Chain {
    int file_a = 0;
    int file_b = 0;
    std::vector<Piece> pieces;
    int matched() const {
        int m = 0;
        for (const auto& p : pieces) m += p.len;
        return m;
    }
};

// Gaps larger than this are never searched; a clone needing one would be
// hundreds of units long.
constexpr int kGapSearchCap = 128;

struct GappedContext {
    const Corpus* corpus;
    const FlatCorpus* flat;
    CloneParams params;
    // Per file: maximal runs of units sharing a method scope. run_end[u] is
    // one past the run containing u. Whole-file runs when boundaries are
    // ignored.
    std::vector<std::vector<int>> run_begin;
    std::vector<std::vector<int>> run_end;

    int code(int file, int unit) const { return flat->seq[flat->file_start[file] + unit]; }
    int units_in(int file) const { return static_cast<int>(corpus->files[file].units.size()); }
};

GappedContext make_context(const Corpus& corpus, const FlatCorpus& flat, const CloneParams& params) {
    GappedContext ctx;
    ctx.corpus = &corpus;
    ctx.flat = &flat;
    ctx.params = params;
    ctx.run_begin.resize(corpus.files.size());
    ctx.run_end.resize(corpus.files.size());
    for (size_t f = 0; f < corpus.files.size(); ++f) {
        const auto& units = corpus.files[f].units;
        int n = static_cast<int>(units.size());
        auto& begin = ctx.run_begin[f];
        auto& end = ctx.run_end[f];
        begin.assign(n, 0);
        end.assign(n, n);
        if (!params.respect_method_boundaries) continue;
        int run_start = 0;
        for (int u = 1; u <= n; ++u) {
            if (u == n || units[u].method_scope != units[u - 1].method_scope) {
                for (int k = run_start; k < u; ++k) {
                    begin[k] = run_start;
                    end[k] = u;
                }
                run_start = u;
            }
        }
    }
    return ctx;
}

// Extends the chain's outermost piece exactly (no gap) as far as codes match
// inside the current method runs.
void exact_extend(const GappedContext& ctx, Chain& chain) {
    Piece& last = chain.pieces.back();
    int ea = ctx.run_end[chain.file_a][last.a];
    int eb = ctx.run_end[chain.file_b][last.b];
    while (last.a + last.len < ea && last.b + last.len < eb &&
           ctx.code(chain.file_a, last.a + last.len) == ctx.code(chain.file_b, last.b + last.len))
        ++last.len;
    Piece& first = chain.pieces.front();
    int ba = ctx.run_begin[chain.file_a][first.a];
    int bb = ctx.run_begin[chain.file_b][first.b];
    while (first.a > ba && first.b > bb &&
           ctx.code(chain.file_a, first.a - 1) == ctx.code(chain.file_b, first.b - 1)) {
        --first.a;
        --first.b;
        ++first.len;
    }
}

// One greedy gap jump at the chain's end (forward) or start (backward).
// Candidates are ordered by gap size, then total skip, then skip on the
// first side; the first that resumes an exact match wins.
bool gap_jump(const GappedContext& ctx, Chain& chain, bool forward) {
    const Piece& edge = forward ? chain.pieces.back() : chain.pieces.front();
    int ia = forward ? edge.a + edge.len : edge.a;  // first unmatched position
    int ib = forward ? edge.b + edge.len : edge.b;
    int begin_a = ctx.run_begin[chain.file_a][chain.pieces.front().a];
    int begin_b = ctx.run_begin[chain.file_b][chain.pieces.front().b];
    int end_a = ctx.run_end[chain.file_a][chain.pieces.front().a];
    int end_b = ctx.run_end[chain.file_b][chain.pieces.front().b];

    int span_cap = std::max(end_a - chain.pieces.front().a, end_b - chain.pieces.front().b);
    if (!forward) {
        Piece last = chain.pieces.back();
        span_cap = std::max(last.a + last.len - begin_a, last.b + last.len - begin_b);
    }
    int limit = std::min(kGapSearchCap, static_cast<int>(ctx.params.max_gap_ratio * span_cap));
    if (limit < 1) return false;

    auto try_candidate = [&](int ga, int gb) -> bool {
        int pa, pb;
        if (forward) {
            pa = ia + ga;
            pb = ib + gb;
            if (pa >= end_a || pb >= end_b) return false;
        } else {
            pa = ia - ga - 1;
            pb = ib - gb - 1;
            if (pa < begin_a || pb < begin_b) return false;
        }
        if (ctx.code(chain.file_a, pa) != ctx.code(chain.file_b, pb)) return false;
        int len = 1;
        if (forward) {
            while (pa + len < end_a && pb + len < end_b &&
                   ctx.code(chain.file_a, pa + len) == ctx.code(chain.file_b, pb + len))
                ++len;
            chain.pieces.push_back({pa, pb, len});
        } else {
            while (pa - 1 >= begin_a && pb - 1 >= begin_b &&
                   ctx.code(chain.file_a, pa - 1) == ctx.code(chain.file_b, pb - 1)) {
                --pa;
                --pb;
                ++len;
            }
            chain.pieces.insert(chain.pieces.begin(), {pa, pb, len});
        }
        return true;
    };

    for (int m = 1; m <= limit; ++m) {
        for (int extra = 0; extra <= m; ++extra) {
            if (try_candidate(extra, m)) return true;
            if (extra < m && try_candidate(m, extra)) return true;
        }
    }
    return false;
}

// Enforces the per-gap ratio bound against the final merged length; on a
// violation the chain is cut before the offending gap and rechecked.
void trim_to_ratio(const CloneParams& params, Chain& chain) {
    while (chain.pieces.size() > 1) {
        const Piece& first = chain.pieces.front();
        const Piece& last = chain.pieces.back();
        int span_a = last.a + last.len - first.a;
        int span_b = last.b + last.len - first.b;
        double merged = static_cast<double>(std::max(span_a, span_b));
        size_t cut = chain.pieces.size();
        for (size_t k = 0; k + 1 < chain.pieces.size(); ++k) {
            const Piece& p = chain.pieces[k];
            const Piece& q = chain.pieces[k + 1];
            int gap = std::max(q.a - (p.a + p.len), q.b - (p.b + p.len));
            if (gap > params.max_gap_ratio * merged + 1e-9) {
                cut = k + 1;
                break;
            }
        }
        if (cut == chain.pieces.size()) return;
        chain.pieces.resize(cut);
    }
}

CloneInstance instance_from_side(const Chain& chain, bool side_a) {
    CloneInstance inst;
    inst.file_id = side_a ? chain.file_a : chain.file_b;
    auto pos = [&](const Piece& p) { return side_a ? p.a : p.b; };
    inst.start_unit = pos(chain.pieces.front());
    inst.end_unit = pos(chain.pieces.back()) + chain.pieces.back().len - 1;
    for (size_t k = 0; k + 1 < chain.pieces.size(); ++k) {
        int gap_start = pos(chain.pieces[k]) + chain.pieces[k].len;
        int gap_end = pos(chain.pieces[k + 1]) - 1;
        if (gap_end >= gap_start) inst.gap_spans.push_back({gap_start, gap_end});
    }
    return inst;
}

std::string instance_key(const CloneInstance& inst) {
    std::string key = std::to_string(inst.file_id) + ":" + std::to_string(inst.start_unit) + "-" +
                      std::to_string(inst.end_unit);
    for (const auto& g : inst.gap_spans)
        key += "|" + std::to_string(g.start_unit) + "-" + std::to_string(g.end_unit);
    return key;
}

// True when every matched unit of inner lies inside the matched units of an
// instance of outer covering it.
bool instance_covered(const CloneInstance& inner, const CloneInstance& outer) {
    if (inner.file_id != outer.file_id) return false;
    if (inner.start_unit < outer.start_unit || inner.end_unit > outer.end_unit) return false;
    for (int u = inner.start_unit; u <= inner.end_unit; ++u) {
        if (in_gap(inner.gap_spans, u)) continue;
        if (in_gap(outer.gap_spans, u)) return false;
    }
    return true;
}

bool class_covered(const CloneClass& inner, const CloneClass& outer) {
    for (const auto& ci : inner.instances) {
        bool found = false;
        for (const auto& co : outer.instances)
            if (instance_covered(ci, co)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<CloneClass> detect_gapped(const Corpus& corpus, const CloneParams& params) {
    params.validate();
    if (params.max_gaps == 0) return detect_clones(corpus, params);
    if (corpus.total_units() == 0) return {};

    FlatCorpus flat = flatten(corpus);
    GappedContext ctx = make_context(corpus, flat, params);

    int anchor_min = std::max(2, (params.min_length + params.max_gaps) / (params.max_gaps + 1));
    std::vector<Repeat> anchors = maximal_repeats(flat.seq, anchor_min);

    std::set<std::string> chain_keys;
    std::vector<Chain> chains;
    for (const auto& anchor : anchors) {
        for (size_t i = 0; i < anchor.positions.size(); ++i) {
            for (size_t j = i + 1; j < anchor.positions.size(); ++j) {
                int pa = anchor.positions[i];
                int pb = anchor.positions[j];
                int fa = flat.pos_file[pa];
                int fb = flat.pos_file[pb];
                int ua = flat.pos_unit[pa];
                int ub = flat.pos_unit[pb];
                // Split the anchor where either side crosses a method run.
                int offset = 0;
                while (offset < anchor.length) {
                    int seg_end = std::min({anchor.length,
                                            ctx.run_end[fa][ua + offset] - ua,
                                            ctx.run_end[fb][ub + offset] - ub});
                    int seg_len = seg_end - offset;
                    if (seg_len >= anchor_min) {
                        Chain chain;
                        chain.file_a = fa;
                        chain.file_b = fb;
                        chain.pieces.push_back({ua + offset, ub + offset, seg_len});
                        exact_extend(ctx, chain);
                        int budget = params.max_gaps;
                        while (budget > 0 && gap_jump(ctx, chain, /*forward=*/true)) --budget;
                        while (budget > 0 && gap_jump(ctx, chain, /*forward=*/false)) --budget;
                        trim_to_ratio(params, chain);
                        if (chain.matched() >= params.min_length) {
                            if (std::tie(chain.file_b, chain.pieces.front().b) <
                                std::tie(chain.file_a, chain.pieces.front().a)) {
                                for (auto& p : chain.pieces) std::swap(p.a, p.b);
                                std::swap(chain.file_a, chain.file_b);
                            }
                            CloneInstance ia = instance_from_side(chain, true);
                            CloneInstance ib = instance_from_side(chain, false);
                            // A side aligned with itself shifted through a
                            // periodic run is noise, not a near-miss clone.
                            bool self_overlap = ia.file_id == ib.file_id &&
                                                ia.start_unit <= ib.end_unit && ib.start_unit <= ia.end_unit;
                            std::string key = instance_key(ia) + "/" + instance_key(ib);
                            if (!self_overlap && chain_keys.insert(key).second)
                                chains.push_back(std::move(chain));
                        }
                    }
                    offset = std::max(seg_end, offset + 1);
                }
            }
        }
    }

    // Group chain sides by matched sequence; instances of one class agree on
    // everything outside their gaps.
    std::map<std::string, std::map<std::string, CloneInstance>> groups;
    std::map<std::string, std::pair<int, bool>> group_info;  // fingerprint -> (length, has gaps)
    for (const auto& chain : chains) {
        CloneInstance ia = instance_from_side(chain, true);
        CloneInstance ib = instance_from_side(chain, false);
        std::string fp = fingerprint_instance(corpus, ia);
        bool has_gaps = chain.pieces.size() > 1;
        auto& info = group_info[fp];
        info.first = chain.matched();
        info.second = info.second || has_gaps;
        groups[fp].emplace(instance_key(ia), ia);
        groups[fp].emplace(instance_key(ib), ib);
    }

    std::vector<CloneClass> pool = detect_clones(corpus, params);
    std::set<std::string> pool_keys;
    for (const auto& c : pool) {
        std::string key = c.fingerprint;
        for (const auto& inst : c.instances) key += "/" + instance_key(inst);
        pool_keys.insert(key);
    }
    for (auto& [fp, instances] : groups) {
        if (instances.size() < 2) continue;
        std::set<std::tuple<int, int, int>> spans;
        for (const auto& [key, inst] : instances)
            spans.insert({inst.file_id, inst.start_unit, inst.end_unit});
        if (spans.size() < 2) continue;
        CloneClass c;
        c.fingerprint = fp;
        c.length = group_info[fp].first;
        c.gapped = group_info[fp].second;
        for (auto& [key, inst] : instances) c.instances.push_back(inst);
        std::sort(c.instances.begin(), c.instances.end(), [](const CloneInstance& a, const CloneInstance& b) {
            return std::tie(a.file_id, a.start_unit, a.end_unit) < std::tie(b.file_id, b.start_unit, b.end_unit);
        });
        std::string key = c.fingerprint;
        for (const auto& inst : c.instances) key += "/" + instance_key(inst);
        if (pool_keys.insert(key).second) pool.push_back(std::move(c));
    }

    // Drop classes whose matched units are fully covered by a stronger class;
    // coverage can only stay equal or grow relative to detect_clones.
    auto precedence = [](const CloneClass& c) {
        return std::make_tuple(c.length, c.instances.size(), c.fingerprint);
    };
    std::vector<CloneClass> result;
    for (size_t i = 0; i < pool.size(); ++i) {
        bool subsumed = false;
        for (size_t j = 0; j < pool.size() && !subsumed; ++j) {
            if (i == j) continue;
            if (precedence(pool[j]) > precedence(pool[i]) && class_covered(pool[i], pool[j])) subsumed = true;
        }
        if (!subsumed) result.push_back(pool[i]);
    }

    std::sort(result.begin(), result.end(), [](const CloneClass& a, const CloneClass& b) {
        if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
        if (a.length != b.length) return a.length > b.length;
        return a.instances.front().start_unit < b.instances.front().start_unit;
    });
    return result;
}

double coverage_percent(double analysed_units, double cloned_units) {
    return 100.0 * cloned_units / analysed_units;
}

CloneMetrics compute_metrics(const std::vector<CloneClass>& classes, const Corpus& corpus) {
    CloneMetrics m;
    m.analysed_units = static_cast<long long>(corpus.total_units());
    if (m.analysed_units == 0) throw FatalError("clone metrics undefined: corpus has no units");

    std::vector<int> file_offset(corpus.files.size(), 0);
    int total = 0;
    for (size_t f = 0; f < corpus.files.size(); ++f) {
        file_offset[f] = total;
        total += static_cast<int>(corpus.files[f].units.size());
    }

    std::vector<char> covered(total, 0);
    for (const auto& c : classes)
        for (const auto& inst : c.instances)
            for (int u = inst.start_unit; u <= inst.end_unit; ++u)
                if (!in_gap(inst.gap_spans, u)) covered[file_offset[inst.file_id] + u] = 1;
    m.cloned_units = std::count(covered.begin(), covered.end(), 1);
    m.unit_coverage = coverage_percent(static_cast<double>(m.analysed_units), static_cast<double>(m.cloned_units));

    // Redundancy: every instance beyond the first of a class repeats its
    // units. Longer classes claim overlapping units first; a unit claimed
    // once is never recounted.
    std::vector<const CloneClass*> order;
    order.reserve(classes.size());
    for (const auto& c : classes) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const CloneClass* a, const CloneClass* b) {
        if (a->length != b->length) return a->length > b->length;
        return a->fingerprint < b->fingerprint;
    });
    std::vector<char> claimed(total, 0);
    long long redundant = 0;
    for (const CloneClass* c : order) {
        for (size_t k = 0; k < c->instances.size(); ++k) {
            const CloneInstance& inst = c->instances[k];
            for (int u = inst.start_unit; u <= inst.end_unit; ++u) {
                if (in_gap(inst.gap_spans, u)) continue;
                int g = file_offset[inst.file_id] + u;
                if (claimed[g]) continue;
                claimed[g] = 1;
                if (k > 0) ++redundant;
            }
        }
    }
    m.blow_up = 100.0 * static_cast<double>(m.analysed_units) /
                static_cast<double>(m.analysed_units - redundant);

    for (const auto& c : classes) {
        m.longest_clone = std::max(m.longest_clone, c.length);
        m.max_instances = std::max(m.max_instances, static_cast<int>(c.instances.size()));
    }
    return m;
}

std::string fingerprint_instance(const Corpus& corpus, const CloneInstance& instance) {
    uint64_t hash = 1469598103934665603ULL;
    const SourceFile& file = corpus.files[instance.file_id];
    for (int u = instance.start_unit; u <= instance.end_unit; ++u) {
        if (in_gap(instance.gap_spans, u)) continue;
        for (int code : file.units[u].token_ids) {
            const std::string& text = corpus.tokens.text_of(code);
            hash = fnv1a_step(hash, text.data(), text.size());
            hash = fnv1a_step(hash, "\x1f", 1);
        }
        hash = fnv1a_step(hash, "\x1e", 1);
    }
    return to_hex(hash);
}

SuppressResult suppress_with_fingerprints(std::vector<CloneClass> classes,
                                          const std::vector<std::string>& entries) {
    SuppressResult out;
    std::set<std::string> fingerprints;
    for (const auto& raw : entries) {
        std::string line = raw.substr(0, raw.find('#'));
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = line.find_last_not_of(" \t\r");
        std::string entry = line.substr(begin, end - begin + 1);
        bool hex = entry.size() == 16 &&
                   std::all_of(entry.begin(), entry.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
        if (!hex) {
            out.warnings.push_back("malformed suppression entry ignored: '" + entry + "'");
            continue;
        }
        fingerprints.insert(entry);
    }
    for (auto& c : classes)
        if (!fingerprints.count(c.fingerprint)) out.classes.push_back(std::move(c));
    return out;
}

SuppressResult suppress(std::vector<CloneClass> classes, const std::string& suppression_file) {
    std::ifstream in(suppression_file);
    if (!in) throw FatalError("suppression file not readable: " + suppression_file);
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) entries.push_back(line);
    return suppress_with_fingerprints(std::move(classes), entries);
}

namespace {

json classes_to_json(const Corpus& corpus, const std::vector<CloneClass>& classes) {
    json arr = json::array();
    for (const auto& c : classes) {
        json instances = json::array();
        for (const auto& inst : c.instances) {
            const SourceFile& file = corpus.files[inst.file_id];
            json gaps = json::array();
            for (const auto& g : inst.gap_spans)
                gaps.push_back({{"start_unit", g.start_unit},
                                {"end_unit", g.end_unit},
                                {"start_line", file.units[g.start_unit].start_line},
                                {"end_line", file.units[g.end_unit].end_line}});
            instances.push_back({{"path", file.path},
                                 {"start_unit", inst.start_unit},
                                 {"end_unit", inst.end_unit},
                                 {"start_line", file.units[inst.start_unit].start_line},
                                 {"end_line", file.units[inst.end_unit].end_line},
                                 {"gaps", gaps}});
        }
        arr.push_back({{"fingerprint", c.fingerprint},
                       {"length", c.length},
                       {"gapped", c.gapped},
                       {"instances", instances}});
    }
    return arr;
}

json metrics_to_json(const CloneMetrics& m) {
    return json{{"analysed_units", m.analysed_units}, {"cloned_units", m.cloned_units},
                {"unit_coverage", m.unit_coverage},   {"blow_up", m.blow_up},
                {"longest_clone", m.longest_clone},   {"max_instances", m.max_instances}};
}

}  // namespace

std::string clone_report_json(const Corpus& corpus, const CloneParams& params,
                              const std::vector<CloneClass>& conventional,
                              const CloneMetrics& conventional_metrics,
                              const std::vector<CloneClass>& gapped, const CloneMetrics& gapped_metrics) {
    json j;
    j["schema"] = "clones.v1";
    j["version_label"] = corpus.version_label;
    j["normalization"] = normalization_name(corpus.scheme);
    j["params"] = {{"min_length", params.min_length},
                   {"max_gaps", params.max_gaps},
                   {"max_gap_ratio", params.max_gap_ratio},
                   {"respect_method_boundaries", params.respect_method_boundaries}};
    j["conventional"] = {{"classes", classes_to_json(corpus, conventional)},
                         {"metrics", metrics_to_json(conventional_metrics)}};
    j["gapped"] = {{"classes", classes_to_json(corpus, gapped)},
                   {"metrics", metrics_to_json(gapped_metrics)}};
    return j.dump(2) + "\n";
}

}  // namespace qaforge
