#pragma once

#include <string>
#include <vector>

#include "qaforge/source_model.h"

namespace qaforge {

struct CloneParams {
    int min_length = 10;             // units
    int max_gaps = 1;                // per clone
    double max_gap_ratio = 0.30;     // fraction of merged clone length
    bool respect_method_boundaries = true;  // gapped detection only

    void validate() const;
};

// Half of a discontinuity inside one instance; unit indices, inclusive.
struct GapSpan {
    int start_unit = 0;
    int end_unit = 0;
};

struct CloneInstance {
    int file_id = 0;
    int start_unit = 0;
    int end_unit = 0;  // inclusive
    std::vector<GapSpan> gap_spans;  // non-empty spans strictly inside [start, end]
};

struct CloneClass {
    std::vector<CloneInstance> instances;  // >= 2, sorted by (file, start)
    int length = 0;                        // matched units, gaps excluded
    std::string fingerprint;               // stable across runs and machines
    bool gapped = false;
};

struct CloneMetrics {
    long long analysed_units = 0;
    long long cloned_units = 0;
    double unit_coverage = 0.0;  // percent
    double blow_up = 100.0;      // percent, >= 100
    int longest_clone = 0;       // units
    int max_instances = 0;
};

// Exact detection: the maximal repeated normalized unit subsequences of
// length >= min_length, one class per distinct subsequence. Classes are
// sorted by fingerprint.
std::vector<CloneClass> detect_clones(const Corpus& corpus, const CloneParams& params);

// Near-miss detection: exact seed matches merged across bounded gaps. With
// max_gaps = 0 this returns detect_clones(corpus, params) unchanged.
std::vector<CloneClass> detect_gapped(const Corpus& corpus, const CloneParams& params);

// The probability (in percent) that an arbitrary unit is part of a clone.
double coverage_percent(double analysed_units, double cloned_units);

CloneMetrics compute_metrics(const std::vector<CloneClass>& classes, const Corpus& corpus);

// Stable content hash of an instance's matched (gap-free) normalized token
// text sequence; equal for every instance of a class.
std::string fingerprint_instance(const Corpus& corpus, const CloneInstance& instance);

struct SuppressResult {
    std::vector<CloneClass> classes;
    std::vector<std::string> warnings;
};

// Suppression file: one fingerprint per line, '#' starts a comment.
// Malformed entries warn and are ignored.
SuppressResult suppress(std::vector<CloneClass> classes, const std::string& suppression_file);
SuppressResult suppress_with_fingerprints(std::vector<CloneClass> classes,
                                          const std::vector<std::string>& entries);

// clones.v1 report body for one detector run.
std::string clone_report_json(const Corpus& corpus, const CloneParams& params,
                              const std::vector<CloneClass>& conventional,
                              const CloneMetrics& conventional_metrics,
                              const std::vector<CloneClass>& gapped, const CloneMetrics& gapped_metrics);

}  // namespace qaforge
