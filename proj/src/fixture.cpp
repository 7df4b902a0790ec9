#include "scorm/fixture.hpp"

#include <ostream>

#include "scorm/dataset.hpp"

namespace scorm::fixture {

namespace {

struct Row {
    int period;
    int size;
    int label;
    double q;
    double obs;
    double pred;
};

// Steam-trap returns over 81 weekly periods; 1429 cores in total, nine
// extreme batches.
constexpr Row rows[] = {
    {1, 9, 0, 0.09, 2140, 2177},   {2, 10, 0, 0.67, 1176, 1225},
    {3, 6, 0, 0.47, 292, 357},     {4, 8, 0, 0.93, 65, 99},
    {5, 7, 0, 0.91, 56, 47},       {6, 8, 0, 0.38, 644, 641},
    {7, 7, 0, 0.91, 92, 83},       {8, 6, 0, 0.69, 93, 83},
    {9, 1, 0, 0.64, 153, 133},     {10, 5, 0, 0.85, 106, 105},
    {11, 10, 0, 0.83, 184, 164},   {12, 10, 0, 0.82, 179, 156},
    {13, 6, 0, 0.86, 125, 120},    {14, 5, 0, 0.34, 438, 339},
    {15, 5, 0, 0.44, 321, 337},    {16, 6, 0, 0.36, 421, 385},
    {17, 4, 0, 0.68, 158, 163},    {18, 3, 0, 0.64, 112, 107},
    {19, 2, 0, 0.95, 35, 20},      {20, 3, 0, 0.66, 156, 144},
    {21, 5, 0, 0.98, 121, 101},    {22, 9, 0, 0.78, 156, 179},
    {23, 6, 0, 0.33, 335, 342},    {24, 7, 0, 0.72, 830, 830},
    {25, 10, 0, 0.86, 171, 193},   {26, 9, 0, 0.96, 56, 38},
    {27, 110, 1, 0.74, 3123, 3101},{28, 47, 1, 0.78, 1105, 1008},
    {29, 10, 0, 0.45, 653, 629},   {30, 18, 0, 0.82, 169, 111},
    {31, 19, 0, 0.42, 1193, 1163}, {32, 10, 0, 0.79, 335, 315},
    {33, 13, 0, 0.89, 182, 171},   {34, 10, 0, 0.64, 410, 395},
    {35, 60, 1, 0.75, 1788, 1713}, {36, 58, 1, 0.38, 3169, 3162},
    {37, 79, 1, 0.97, 1032, 1015}, {38, 37, 0, 0.5, 1975, 1882},
    {39, 9, 0, 0.52, 879, 824},    {40, 10, 0, 0.48, 852, 800},
    {41, 8, 0, 0.5, 706, 693},     {42, 8, 0, 0.65, 395, 375},
    {43, 15, 0, 0.75, 736, 725},   {44, 12, 0, 0.78, 628, 563},
    {45, 15, 0, 0.79, 751, 711},   {46, 13, 0, 0.83, 312, 308},
    {47, 6, 0, 0.5, 269, 243},     {48, 36, 0, 0.47, 1355, 1346},
    {49, 36, 0, 0.33, 2551, 2531}, {50, 61, 1, 0.48, 5165, 5156},
    {51, 33, 0, 0.88, 664, 620},   {52, 5, 0, 0.9, 80, 96},
    {53, 5, 0, 0.8, 106, 136},     {54, 12, 0, 0.72, 631, 558},
    {55, 16, 0, 0.55, 701, 721},   {56, 15, 0, 0.73, 490, 496},
    {57, 12, 0, 0.94, 218, 209},   {58, 10, 0, 0.97, 158, 151},
    {59, 6, 0, 0.75, 186, 239},    {60, 10, 0, 0.46, 590, 641},
    {61, 7, 0, 0.75, 286, 232},    {62, 9, 0, 0.94, 71, 94},
    {63, 6, 0, 0.99, 52, 35},      {64, 5, 0, 0.89, 93, 83},
    {65, 35, 0, 0.79, 1116, 1188}, {66, 120, 1, 0.78, 3670, 3636},
    {67, 38, 1, 0.53, 2607, 2602}, {68, 92, 1, 0.92, 1200, 1258},
    {69, 9, 0, 0.49, 445, 477},    {70, 12, 0, 0.89, 120, 173},
    {71, 11, 0, 0.94, 163, 128},   {72, 16, 0, 0.84, 462, 385},
    {73, 9, 0, 0.9, 78, 83},       {74, 8, 0, 0.96, 127, 80},
    {75, 11, 0, 0.78, 243, 262},   {76, 7, 0, 0.81, 121, 174},
    {77, 6, 0, 0.81, 401, 304},    {78, 12, 0, 0.95, 48, 104},
    {79, 8, 0, 0.57, 370, 334},    {80, 11, 0, 0.97, 267, 232},
    {81, 6, 0, 0.47, 241, 270},
};

} // namespace

const std::vector<BatchObservation>& steam_trap_batches() {
    static const std::vector<BatchObservation> batches = [] {
        std::vector<BatchObservation> out;
        out.reserve(std::size(rows));
        for (const Row& r : rows) {
            BatchObservation b;
            b.period = r.period;
            b.size = r.size;
            b.label = r.label == 1 ? RegimeLabel::extreme : RegimeLabel::normal;
            b.mean_quality = r.q;
            b.observed_cost = r.obs;
            b.predicted_cost = r.pred;
            out.push_back(b);
        }
        return out;
    }();
    return batches;
}

const Goldens& goldens() {
    static const Goldens g = [] {
        Goldens out{};
        for (const Row& r : rows) {
            out.total_cores += r.size;
            out.observed_cost_total += r.obs;
            out.predicted_cost_total += r.pred;
            if (r.label == 1) {
                ++out.extreme_batches;
                out.extreme_cores += r.size;
                out.extreme_observed_cost += r.obs;
            }
        }
        // Frozen from an independent long-double evaluation of the
        // anchored fit's mixture density over the size column (see
        // tests/test_fixture.cpp for the cross-check).
        out.anchored_fit_neg_log_lik = 362.5393299352664;
        return out;
    }();
    return g;
}

void write_csv(std::ostream& out) {
    emit_batches(out, steam_trap_batches());
}

} // namespace scorm::fixture
