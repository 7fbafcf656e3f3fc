#pragma once

#include "superkoszul/thick.hpp"

namespace superkoszul {

/// Truncation and corpus budgets. Defaults match the bundled manifests.
struct Budgets {
    int hbar_order = 4;
    int momentum_order = 4;
    int corpus_degree = 3;
    int corpus_size = 8;
    unsigned seed = 1;
};

/// Parsed and validated manifest: base chart declaration plus the P / rho / F
/// data, realized on a DualPair. Expression fields use the same syntax as
/// parse_expression; P is parsed over the multivector chart (x, x*), log_rho
/// and F over the charts their roles demand.
struct Manifest {
    std::vector<std::pair<std::string, Parity>> bases;
    std::string p_text;
    std::string log_rho_text;
    std::optional<std::string> f_text;
    Budgets budgets;

    DualPair pair;
    PStructure P;
    VolumeData vol;
    std::optional<SuperPoly> F;
};

/// Loads and validates a JSON manifest. Schema:
///   { "chart": [{"name": "x", "parity": 0}, ...],
///     "P": "xs*ys", "log_rho": "0", "F": "..." (optional),
///     "budgets": { "hbar_order": 4, "momentum_order": 4,
///                  "corpus_degree": 3, "corpus_size": 8, "seed": 1 } }
/// Rejects odd P ("P must be even"), non-base log_rho, bad parities.
Manifest parse_manifest(const std::string& path);
Manifest parse_manifest_text(const std::string& json_text);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;  // residual witness or skip reason
};

/// Deterministic for a fixed (manifest, seed): checks are sorted by name and
/// every corpus is drawn from a seed derived from the manifest.
struct Report {
    std::string suite;
    unsigned seed = 0;
    Budgets budgets;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string render_text(bool color = false) const;
    /// Versioned machine-readable rendering ("schema": 1).
    std::string render_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite (or "all"). Mathematically inapplicable checks are
/// reported as skipped-with-reason, never as failures. Throws Error on an
/// unknown suite name.
Report run_suite(const Manifest& m, const std::string& suite);

}  // namespace superkoszul
