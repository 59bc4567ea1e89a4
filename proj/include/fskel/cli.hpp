#pragma once

// Command implementations behind the fractal-skeleton executable. Each
// returns the process exit code and writes to the given streams.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace fskel::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,        // disconnected attractor or failed verification
    kExitInconclusive = 2,  // neighbor-map cap exceeded
    kExitParse = 3,         // unreadable or invalid input
};

inline constexpr double kDefaultEps = 1e-9;
inline constexpr const char* kEpsEnv = "FRACTAL_SKELETON_EPS";

// kDefaultEps unless FRACTAL_SKELETON_EPS holds a positive number.
double default_eps();

struct AnalyzeArgs {
    std::string file;
    std::size_t cap = 20'000;
    double eps = kDefaultEps;
    bool json = false;
    int dstar_horizon = 6;
    std::optional<double> dstar_bound;  // default: twice the bounding radius
};

struct SkeletonArgs {
    std::string file;
    std::string spanning = "tree";  // tree | full
    std::string policy = "self-loop";
    std::size_t cap = 20'000;
    double eps = kDefaultEps;
    bool json = false;
    std::string out;  // also write the JSON report here when set
};

struct VerifyArgs {
    std::string file;
    std::string points;
    double eps = kDefaultEps;
    bool json = false;
};

struct RenderArgs {
    std::string file;
    int depth = 6;
    bool skeleton = false;
    std::string svg;  // stdout when empty
    double eps = kDefaultEps;
};

struct ExportDotArgs {
    std::string file;
    std::string graph = "neighbor";  // neighbor | hata
    std::string out;                 // stdout when empty
    std::size_t cap = 20'000;
    double eps = kDefaultEps;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int run_skeleton(const SkeletonArgs& args, std::ostream& out, std::ostream& err);
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int run_render(const RenderArgs& args, std::ostream& out, std::ostream& err);
int run_export_dot(const ExportDotArgs& args, std::ostream& out, std::ostream& err);

}  // namespace fskel::cli
