#ifndef FRACRELAX_H
#define FRACRELAX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FrFormat {
  FR_FORMAT_CSV = 0,
  FR_FORMAT_MARKDOWN = 1,
  FR_FORMAT_JSON_LINES = 2,
} FrFormat;

typedef enum FrRelaxFamily {
  // Exact solution `x^2`, alpha 0.5, B 1.
  FR_RELAX_FAMILY_R11 = 0,
  // Exact solution `x^1.25`, alpha 0.5, B 1.
  FR_RELAX_FAMILY_R12 = 1,
  // `y(0) = 1`, no forcing; exact `E_alpha(-B x^alpha)`.
  FR_RELAX_FAMILY_ML_EXACT = 2,
  // Constant solution 1.
  FR_RELAX_FAMILY_CONSTANT = 3,
} FrRelaxFamily;

typedef enum FrScheme {
  FR_SCHEME_L1 = 0,
  FR_SCHEME_MODIFIED_L1 = 1,
} FrScheme;

// Result code of every fallible call.
typedef enum FrStatus {
  FR_STATUS_OK = 0,
  FR_STATUS_NULL_POINTER = 1,
  FR_STATUS_DOMAIN = 2,
  FR_STATUS_CONVERGENCE = 3,
  FR_STATUS_QUADRATURE = 4,
  FR_STATUS_ZERO_PIVOT = 5,
  FR_STATUS_INVALID_UTF8 = 6,
  FR_STATUS_PANIC = 7,
} FrStatus;

typedef enum FrSubdiffFamily {
  // Initial profile `sin x`, no source.
  FR_SUBDIFF_FAMILY_SINE_MODE = 0,
  // Zero data.
  FR_SUBDIFF_FAMILY_ZERO = 1,
} FrSubdiffFamily;

// Opaque convergence report.
typedef struct FrReport FrReport;

// Opaque subdiffusion solution.
typedef struct FrSpaceTime FrSpaceTime;

// Opaque relaxation solution.
typedef struct FrTimeSeries FrTimeSeries;

// One row of a convergence report.
typedef struct FrReportRow {
  double step;
  double max_error;
  // NaN when no order is reported for this row.
  double order;
  bool has_order;
} FrReportRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *fr_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *fr_version(void);

enum FrStatus fr_gamma(double x, double *out);

// Riemann zeta on `(-1, 0]`.
enum FrStatus fr_zeta(double s, double *out);

// `E_{alpha,beta}(x)` with the default series policy.
enum FrStatus fr_mittag_leffler(double alpha, double beta, double x, double *out);

// Solve `y^(alpha) + B y = sum c_i x^(p_i)`, `y(0) = y0` on `[0, t_end]`.
enum FrStatus fr_relax_solve(double alpha,
                             double b,
                             const double *coeffs,
                             const double *exponents,
                             size_t n_terms,
                             double y0,
                             double t_end,
                             double h,
                             enum FrScheme scheme,
                             struct FrTimeSeries **out);

// Homogeneous problem with `y(0) = 1`, solved with an `m`-term Taylor correction.
enum FrStatus fr_relax_solve_corrected(double alpha,
                                       double b,
                                       size_t m,
                                       double t_end,
                                       double h,
                                       enum FrScheme scheme,
                                       struct FrTimeSeries **out);

size_t fr_time_series_len(const struct FrTimeSeries *series);

double fr_time_series_step(const struct FrTimeSeries *series);

// Copy all values into `buf`, which must hold exactly `fr_time_series_len` entries.
enum FrStatus fr_time_series_copy(const struct FrTimeSeries *series, double *buf, size_t len);

void fr_time_series_free(struct FrTimeSeries *series);

// Source-free subdiffusion on `[0, pi] x [0, t_end]` from `sin(k x)`.
enum FrStatus fr_subdiff_solve_sine(double alpha,
                                    uint32_t k,
                                    size_t n_space,
                                    size_t m_time,
                                    double t_end,
                                    enum FrScheme scheme,
                                    struct FrSpaceTime **out);

// Source-free subdiffusion from sampled initial values at the `len` grid
// nodes (so `N = len - 1`); both end values must be zero.
enum FrStatus fr_subdiff_solve_sampled(double alpha,
                                       const double *initial,
                                       size_t len,
                                       size_t m_time,
                                       double t_end,
                                       enum FrScheme scheme,
                                       struct FrSpaceTime **out);

// `sin x` initial profile solved with an `m`-term Taylor correction.
enum FrStatus fr_subdiff_solve_corrected(double alpha,
                                         size_t m,
                                         double t_end,
                                         size_t n_space,
                                         size_t m_time,
                                         enum FrScheme scheme,
                                         struct FrSpaceTime **out);

// Number of time levels, `M + 1`.
size_t fr_space_time_rows(const struct FrSpaceTime *sol);

// Number of spatial nodes, `N + 1`.
size_t fr_space_time_cols(const struct FrSpaceTime *sol);

// Copy time level `row` into `buf`, which must hold exactly `fr_space_time_cols` entries.
enum FrStatus fr_space_time_copy_row(const struct FrSpaceTime *sol,
                                     size_t row,
                                     double *buf,
                                     size_t len);

void fr_space_time_free(struct FrSpaceTime *sol);

// Convergence study of a relaxation problem on `[0, 1]`. `alpha` and `b`
// are ignored for the fixed R11/R12 families. `m < 0` disables the Taylor
// correction, `m = 0` picks the least `m` with `m alpha >= 2`.
enum FrStatus fr_relax_study(enum FrRelaxFamily family,
                             double alpha,
                             double b,
                             enum FrScheme scheme,
                             double base_step,
                             size_t levels,
                             int32_t m,
                             struct FrReport **out);

// Convergence study of a subdiffusion problem at `t = 1` with `h = pi tau / 3`.
// `m` as for `fr_relax_study`.
enum FrStatus fr_subdiff_study(enum FrSubdiffFamily family,
                               double alpha,
                               enum FrScheme scheme,
                               double base_step,
                               size_t levels,
                               int32_t m,
                               struct FrReport **out);

size_t fr_report_len(const struct FrReport *report);

enum FrStatus fr_report_row(const struct FrReport *report, size_t index, struct FrReportRow *out);

// Render a report as text. Release the string with `fr_string_free`.
enum FrStatus fr_report_render(const struct FrReport *report, enum FrFormat format, char **out);

// Parse a report from JSON lines text.
enum FrStatus fr_report_parse_json_lines(const char *text, struct FrReport **out);

void fr_report_free(struct FrReport *report);

void fr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACRELAX_H */
