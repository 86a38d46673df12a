#ifndef ZETAHEIGHT_H
#define ZETAHEIGHT_H

#include <stddef.h>
#include <stdint.h>

#if defined(ZH_BUILDING_LIBRARY)
#define ZH_API __attribute__((visibility("default")))
#else
#define ZH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zh_status {
  ZH_OK = 0,
  ZH_ERR_INVALID_ARGUMENT = 1,
  ZH_ERR_DOMAIN = 2,
  ZH_ERR_ACCURACY = 3,
  ZH_ERR_CONSISTENCY = 4,
  ZH_ERR_PRECONDITION = 5,
  ZH_ERR_CONVERGENCE = 6,
  ZH_ERR_TOPOLOGY = 7,
  ZH_ERR_FIT = 8,
  ZH_ERR_IO = 9,
  ZH_ERR_INTERNAL = 10
} zh_status;

/* Message of the last failed call on this thread; empty after success. */
ZH_API const char* zh_last_error(void);
ZH_API const char* zh_status_name(zh_status s);
ZH_API const char* zh_version(void);

/* Strings returned by the library are released with zh_string_free. */
ZH_API void zh_string_free(char* s);

typedef enum zh_method { ZH_METHOD_SPECTRAL = 0, ZH_METHOD_FD2 = 1 } zh_method;

/* Zero for t_min, budget or tolerance selects the default of each computation. */
typedef struct zh_options {
  double t_min;      /* smallest sampled time */
  double budget;     /* absolute heat trace error for t >= t_min */
  double T;          /* Mellin split time */
  double tolerance;  /* largest accepted height error */
  double grid_scale; /* scales mode grids (collars) */
  zh_method method;
} zh_options;

ZH_API void zh_options_default(zh_options* opts);

typedef struct zh_height {
  double value; /* zeta'(0) = -log det */
  double error;
  double zeta0; /* zeta(0) */
  double T;
} zh_height;

/* ---- one-dimensional and flat determinants ---- */

typedef enum zh_profile_kind {
  ZH_PROFILE_CONSTANT = 0, /* coeffs: c */
  ZH_PROFILE_NEG_LOG_SIN = 1,
  ZH_PROFILE_LOG_SIN = 2,
  ZH_PROFILE_TRIG = 3 /* coeffs: c, amp_1, phase_1, amp_2, phase_2, ... */
} zh_profile_kind;

ZH_API zh_status zh_det_interval(double length, const zh_options* opts, zh_height* out);
/* Dirichlet problem on [a, b] with metric e^{phi} dx. closed_form may be NULL. */
ZH_API zh_status zh_det_weighted_interval(double a, double b, zh_profile_kind kind, const double* coeffs,
                                          size_t n_coeffs, const zh_options* opts, zh_height* out,
                                          double* closed_form);
/* Flat cylinder of circumference l and height b. */
ZH_API zh_status zh_det_flat_cylinder(double l, double b, const zh_options* opts, zh_height* out,
                                      double* closed_form);

/* ---- collars ---- */

typedef enum zh_route { ZH_ROUTE_BOTH = 0, ZH_ROUTE_DIRECT = 1, ZH_ROUTE_CONFORMAL = 2 } zh_route;

typedef struct zh_collar_result {
  int has_direct;
  zh_height direct;
  int has_conformal;
  zh_height conformal;
  double h_half;    /* height of the half collar */
  double z_prime_0; /* zero-mode determinant */
  double route_difference;
} zh_collar_result;

ZH_API zh_status zh_collar_height(double l, double A, double B, zh_route route, const zh_options* opts,
                                  zh_collar_result* out);

typedef enum zh_subcollar { ZH_SC_I = 0, ZH_SC_II = 1, ZH_SC_III = 2 } zh_subcollar;
typedef enum zh_leading { ZH_LEADING_STATED = 0, ZH_LEADING_CORRECTED = 1 } zh_leading;

typedef struct zh_sweep_row {
  double l;
  double h;
  double error;
  double leading;
  double residual;
} zh_sweep_row;

/* rows must hold n entries. */
ZH_API zh_status zh_sweep(zh_subcollar kind, const double* l, size_t n, zh_leading leading, int drop_log,
                          zh_sweep_row* rows, double* spread);
ZH_API double zh_leading_term(zh_subcollar kind, double l, zh_leading leading, int drop_log);

/* pieces receives h(M) followed by up to three pieces; n_pieces the count. */
ZH_API zh_status zh_insertion_gap(double l, double A, double B, double A_in, double B_in, double* gap,
                                  double* error, double pieces[4], size_t* n_pieces);

/* ---- meshes ---- */

typedef struct zh_mesh zh_mesh;

ZH_API zh_status zh_mesh_read(const char* path, zh_mesh** out);
ZH_API zh_status zh_mesh_parse(const char* text, zh_mesh** out);
ZH_API zh_status zh_mesh_pants(double spacing, uint64_t seed, zh_mesh** out);
ZH_API zh_status zh_mesh_annulus(double r1, double r2, int n_theta, int n_r, zh_mesh** out);
/* Periodic cylinder [0,l) x [A,B] with metric e^{2 psi(v)}(du^2 + dv^2). */
ZH_API zh_status zh_mesh_cylinder(double l, double A, double B, int nu, int nv, zh_profile_kind kind,
                                  const double* coeffs, size_t n_coeffs, zh_mesh** out);
ZH_API zh_status zh_mesh_perturb(const zh_mesh* mesh, double eta, uint64_t seed, zh_mesh** out);
ZH_API zh_status zh_mesh_write(const zh_mesh* mesh, const char* path);
ZH_API void zh_mesh_free(zh_mesh* mesh);

typedef struct zh_mesh_info {
  int vertices;
  int edges;
  int triangles;
  int boundary_loops;
  int euler_characteristic;
  double area;
  double boundary_length;
  double mesh_size;
  double gauss_bonnet_defect;
} zh_mesh_info;

ZH_API zh_status zh_mesh_get_info(const zh_mesh* mesh, zh_mesh_info* out);

/* ---- uniformization ---- */

typedef enum zh_uniform_map {
  ZH_MAP_PSI = 0, /* geodesic boundary normalization, then F1: type I */
  ZH_MAP_F2 = 1,  /* F2 on a flat mesh: type II */
  ZH_MAP_PHI = 2  /* flat normalization of a type I metric, then F2 */
} zh_uniform_map;

typedef struct zh_uniform_options {
  double area;      /* 0: -2 pi chi for type I, input area otherwise */
  double tolerance; /* Newton residual */
  int max_iterations;
  uint64_t init_seed; /* 0 starts from zero, otherwise a random start */
  double precondition_tol; /* relative curvature tolerance for ZH_MAP_PHI inputs */
} zh_uniform_options;

ZH_API void zh_uniform_options_default(zh_uniform_options* opts);

typedef struct zh_uniformity {
  double target_K;
  double mean_K;
  double max_K_deviation;
  double max_K_deviation_inner;
  double rms_K_deviation;
  double max_k_spread;
  double max_k_deviation;
  double mesh_size;
} zh_uniformity;

typedef struct zh_uniform_info {
  double residual;
  int iterations;
  double functional_value;
  double constraint_violation;
  double area;
  double discrete_K_deviation; /* max |kappa/M - K| at interior vertices, conformal rules */
  zh_uniformity measured;      /* on the realized edge lengths */
} zh_uniform_info;

typedef struct zh_uniformization zh_uniformization;

/* Starts from the mesh metric, which for ZH_MAP_PHI must be of type I. */
ZH_API zh_status zh_uniformize(const zh_mesh* mesh, zh_uniform_map map, const zh_uniform_options* opts,
                               zh_uniformization** out);
/* Continues from a previous result on the same triangulation, composing factors. */
ZH_API zh_status zh_uniformize_result(const zh_uniformization* input, zh_uniform_map map,
                                      const zh_uniform_options* opts, zh_uniformization** out);
ZH_API zh_status zh_uniformization_info(const zh_uniformization* u, zh_uniform_info* out);
/* Conformal factor relative to the input mesh, one value per vertex. */
ZH_API size_t zh_uniformization_size(const zh_uniformization* u);
ZH_API zh_status zh_uniformization_factor(const zh_uniformization* u, double* buffer, size_t n);
/* The realized output metric as a new mesh. */
ZH_API zh_status zh_uniformization_mesh(const zh_uniformization* u, zh_mesh** out);
ZH_API void zh_uniformization_free(zh_uniformization* u);

typedef struct zh_round_trip_info {
  double discrepancy;
  double residual_F1;
  double residual_F2;
  zh_uniformity type_one;
  zh_uniformity type_two;
} zh_round_trip_info;

/* Flat mesh -> type II -> Psi -> Phi. */
ZH_API zh_status zh_round_trip(const zh_mesh* flat_mesh, double area, zh_round_trip_info* out);
/* changes[i] = max |u(perturbed by etas[i]) - u| for the type I factor. */
ZH_API zh_status zh_continuity_probe(const zh_mesh* flat_mesh, const double* etas, size_t n, uint64_t seed,
                                     double* changes);

/* ---- Polyakov-Alvarez ---- */

/* h(e^{2 psi} g) given h(g) = h0. psi has one value per vertex. */
ZH_API zh_status zh_polyakov_shift(const zh_mesh* mesh, const double* psi, size_t n, double h0, double* out);

typedef struct zh_inequality {
  double lhs;
  double rhs;
  double slack;
  int holds;
  double energy;
  double mean_term;
  double log_term;
  int jensen_holds;
  double flux;
  double flux_gradient;
  double flux_target;
} zh_inequality;

/* Uniformizes the flat mesh to type I at area -2 pi chi and evaluates the
   height inequality there. */
ZH_API zh_status zh_height_inequality(const zh_mesh* flat_mesh, zh_inequality* out);
/* Same for a given psi relative to a type I uniformization result at area
   -2 pi chi; a psi outside the admissible family is a precondition error. */
ZH_API zh_status zh_height_inequality_for(const zh_uniformization* type_one, const double* psi, size_t n,
                                          zh_inequality* out);
/* The admissible psi for a type I result (Laplacian 1, constant on the boundary, area normalized). */
ZH_API zh_status zh_inequality_factor(const zh_uniformization* type_one, double* buffer, size_t n);

/* ---- property suites ---- */

/* JSON report: {"passed": bool, "suites": [...]}. suite may be "all". */
ZH_API zh_status zh_verify(const char* suite, uint64_t seed, char** json_out);
/* Newline-separated list of suite names. */
ZH_API zh_status zh_verify_suites(char** out);

#ifdef __cplusplus
}
#endif

#endif
