#include "qwp/qwp_c.h"

#include <cmath>
#include <cstring>
#include <string>

#include "qwp/analysis.hpp"
#include "qwp/sbi.hpp"
#include "qwp/serialize.hpp"

// Opaque handle: a thin box around the serialization variant.
struct qwp_forest {
  qwp::ForestVariant value;
};

namespace {

thread_local std::string g_last_error;

qwp_status to_status(const qwp::Error& e) {
  g_last_error = e.what();
  return static_cast<qwp_status>(static_cast<int>(e.status()));
}

template <class Fn>
qwp_status guarded(Fn&& fn) {
  try {
    fn();
    return QWP_OK;
  } catch (const qwp::Error& e) {
    return to_status(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QWP_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QWP_ERR_ARG;
  }
}

void check(bool cond, const char* msg) {
  if (!cond) qwp::fail(qwp::Status::invalid_argument, msg);
}

qwp::WpParams make_params(int order, int levels) {
  check(order > 0 && levels > 0, "order and levels must be positive");
  return qwp::WpParams{static_cast<unsigned>(order), static_cast<unsigned>(levels)};
}

qwp::rmat image_from(const double* data, std::uint64_t n) {
  check(data != nullptr, "null image pointer");
  qwp::rmat img(n, n);
  std::memcpy(img.data(), data, sizeof(double) * n * n);
  return img;
}

char* dup_basis(const std::vector<qwp::BandKey>& basis) {
  std::string s;
  for (const auto& key : basis) {
    if (!s.empty()) s += ';';
    s += std::to_string(key.m) + ',' + std::to_string(key.j) + ',' + std::to_string(key.l);
  }
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* qwp_version(void) { return qwp::version(); }

const char* qwp_status_str(qwp_status status) {
  switch (status) {
    case QWP_OK:
      return "ok";
    case QWP_ERR_ARG:
      return "invalid argument";
    case QWP_ERR_IO:
      return "i/o error";
    case QWP_ERR_NUMERIC:
      return "numeric error";
  }
  return "unknown status";
}

const char* qwp_last_error(void) { return g_last_error.c_str(); }

qwp_status qwp_forward_1d(const double* signal, uint64_t n, int order, int levels,
                          int directional, qwp_forest** out) {
  return guarded([&] {
    check(signal != nullptr && out != nullptr, "null pointer");
    const qwp::rvec x(signal, signal + n);
    const qwp::WpParams params = make_params(order, levels);
    if (directional)
      *out = new qwp_forest{qwp::qwp_multi_level_forward(x, params)};
    else
      *out = new qwp_forest{qwp::multi_level_forward(x, params)};
  });
}

qwp_status qwp_forward_2d(const double* image, uint64_t n, int order, int levels,
                          int directional, int extend, qwp_forest** out) {
  return guarded([&] {
    check(out != nullptr, "null pointer");
    const qwp::rmat img = image_from(image, n);
    const qwp::WpParams params = make_params(order, levels);
    if (directional) {
      *out = new qwp_forest{qwp::forward2d(img, params, extend != 0)};
    } else {
      check(extend == 0, "extension is only available for the dual-tree transform here");
      *out = new qwp_forest{qwp::wp2d_forward(img, params)};
    }
  });
}

qwp_status qwp_inverse_1d(const qwp_forest* forest, double* signal_out) {
  return guarded([&] {
    check(forest != nullptr && signal_out != nullptr, "null pointer");
    qwp::rvec x;
    if (const auto* wp = std::get_if<qwp::Wp1dForest>(&forest->value))
      x = qwp::multi_level_inverse(*wp, wp->params.levels);
    else if (const auto* qp = std::get_if<qwp::Qwp1dForest>(&forest->value))
      x = qwp::qwp_multi_level_inverse(*qp, qp->params.levels);
    else
      check(false, "not a 1D forest");
    std::memcpy(signal_out, x.data(), sizeof(double) * x.size());
  });
}

qwp_status qwp_inverse_2d(const qwp_forest* forest, double* image_out) {
  return guarded([&] {
    check(forest != nullptr && image_out != nullptr, "null pointer");
    qwp::rmat img;
    if (const auto* wp = std::get_if<qwp::Wp2dForest>(&forest->value))
      img = qwp::wp2d_inverse(*wp, wp->params.levels);
    else if (const auto* dt = std::get_if<qwp::DualTreeForest2D>(&forest->value))
      img = qwp::inverse2d(*dt);
    else
      check(false, "not a 2D forest");
    std::memcpy(image_out, img.data(), sizeof(double) * img.size());
  });
}

void qwp_forest_free(qwp_forest* forest) { delete forest; }

qwp_status qwp_forest_info(const qwp_forest* forest, qwp_forest_kind* kind, uint64_t* n,
                           uint64_t* out_n, int* order, int* levels) {
  return guarded([&] {
    check(forest != nullptr, "null forest");
    const auto& v = forest->value;
    if (kind) *kind = static_cast<qwp_forest_kind>(qwp::forest_kind(v));
    std::visit(
        [&](const auto& f) {
          if (n) *n = f.n;
          if (order) *order = static_cast<int>(f.params.order);
          if (levels) *levels = static_cast<int>(f.params.levels);
        },
        v);
    if (out_n) {
      if (const auto* dt = std::get_if<qwp::DualTreeForest2D>(&v))
        *out_n = dt->orig_n;
      else
        std::visit([&](const auto& f) { *out_n = f.n; }, v);
    }
  });
}

qwp_status qwp_forest_band_count(const qwp_forest* forest, int level, uint64_t* count) {
  return guarded([&] {
    check(forest != nullptr && count != nullptr, "null pointer");
    int levels = 0;
    std::visit([&](const auto& f) { levels = static_cast<int>(f.params.levels); },
               forest->value);
    check(level >= 1 && level <= levels, "level out of range");
    const qwp::ForestKind kind = qwp::forest_kind(forest->value);
    const std::uint64_t side = std::uint64_t(1) << level;
    *count = (kind == qwp::ForestKind::wp2d || kind == qwp::ForestKind::qwp2d) ? side * side
                                                                               : side;
  });
}

qwp_status qwp_forest_band_energy(const qwp_forest* forest, int tree, int level, uint64_t band,
                                  double* energy) {
  return guarded([&] {
    check(forest != nullptr && energy != nullptr, "null pointer");
    uint64_t count = 0;
    const qwp_status st = qwp_forest_band_count(forest, level, &count);
    if (st != QWP_OK) qwp::fail(static_cast<qwp::Status>(st), qwp_last_error());
    check(band < count, "band index out of range");

    double acc = 0.0;
    const auto& v = forest->value;
    if (const auto* wp = std::get_if<qwp::Wp1dForest>(&v)) {
      check(tree == 0, "tree must be 0 for a real forest");
      for (double x : wp->levels[level - 1][band]) acc += x * x;
    } else if (const auto* qp = std::get_if<qwp::Qwp1dForest>(&v)) {
      check(tree == 0 || tree == 1, "tree must be 0 or 1");
      for (const qwp::cplx& z : qp->trees[tree][level - 1][band]) acc += std::norm(z);
    } else if (const auto* wp2 = std::get_if<qwp::Wp2dForest>(&v)) {
      check(tree == 0, "tree must be 0 for a real forest");
      for (double x : wp2->levels[level - 1][band].raw()) acc += x * x;
    } else {
      const auto& dt = std::get<qwp::DualTreeForest2D>(v);
      check(tree == 0 || tree == 1, "tree must be 0 or 1");
      for (const qwp::cplx& z : dt.trees[tree][level - 1][band].raw()) acc += std::norm(z);
    }
    *energy = acc;
  });
}

qwp_status qwp_forest_save(const qwp_forest* forest, const char* path) {
  return guarded([&] {
    check(forest != nullptr && path != nullptr, "null pointer");
    qwp::save_forest(path, forest->value);
  });
}

qwp_status qwp_forest_load(const char* path, qwp_forest** out) {
  return guarded([&] {
    check(path != nullptr && out != nullptr, "null pointer");
    *out = new qwp_forest{qwp::load_forest(path)};
  });
}

qwp_status qwp_psnr(const double* a, const double* b, uint64_t count, double* out_db) {
  return guarded([&] {
    check(a != nullptr && b != nullptr && out_db != nullptr, "null pointer");
    *out_db = qwp::psnr(a, b, count);
  });
}

qwp_status qwp_atom_2d(uint64_t n, int order, int level, uint64_t j, uint64_t l, int sign,
                       double* vartheta, double* theta, double* mag_spectrum, long* kappa0,
                       long* nu0) {
  return guarded([&] {
    const qwp::WpParams params = make_params(order, level);
    const qwp::DirectionalAtom atom =
        qwp::atom2d(n, params, static_cast<unsigned>(level), j, l, sign);
    const std::size_t bytes = sizeof(double) * n * n;
    if (vartheta) std::memcpy(vartheta, atom.vartheta.data(), bytes);
    if (theta) std::memcpy(theta, atom.theta.data(), bytes);
    if (mag_spectrum) std::memcpy(mag_spectrum, atom.mag_spectrum.data(), bytes);
    if (kappa0) *kappa0 = atom.kappa0;
    if (nu0) *nu0 = atom.nu0;
  });
}

qwp_status qwp_orientation_census(uint64_t n, int order, int level, uint64_t* directions) {
  return guarded([&] {
    check(directions != nullptr, "null pointer");
    const qwp::WpParams params = make_params(order, level);
    *directions = qwp::orientation_census(n, params, static_cast<unsigned>(level)).classes;
  });
}

qwp_status qwp_denoise(const double* noisy, uint64_t n, const qwp_denoise_params* params,
                       const double* reference, double* image_out, qwp_denoise_report* report) {
  return guarded([&] {
    check(params != nullptr && image_out != nullptr, "null pointer");
    check(params->cost == 0 || params->cost == 1, "cost must be 0 (entropy) or 1 (l1)");
    const qwp::rmat img = image_from(noisy, n);
    qwp::DenoiseParams dp;
    dp.wp = make_params(params->order, params->levels);
    dp.cost = params->cost == 0 ? qwp::CostKind::entropy : qwp::CostKind::l1;
    dp.rank = params->rank;
    dp.directional = params->directional != 0;
    dp.extend = params->extend != 0;

    qwp::rmat ref_img;
    const qwp::rmat* ref = nullptr;
    if (reference != nullptr) {
      ref_img = image_from(reference, n);
      ref = &ref_img;
    }

    const qwp::DenoiseResult res = qwp::denoise(img, dp, ref);
    std::memcpy(image_out, res.image.data(), sizeof(double) * n * n);
    if (report != nullptr) {
      report->threshold_plus = res.threshold_plus;
      report->threshold_minus = res.threshold_minus;
      report->psnr_vs_ref = res.psnr_vs_ref;
      report->basis_plus = dup_basis(res.basis_plus);
      report->basis_minus = dup_basis(res.basis_minus);
    }
  });
}

void qwp_string_free(char* s) { delete[] s; }

qwp_status qwp_sbi_restore(const double* degraded, uint64_t n, const uint8_t* mask,
                           const double* kernel, int kh, int kw,
                           const qwp_sbi_params* params, const double* reference,
                           double* image_out, double* trace) {
  return guarded([&] {
    check(params != nullptr && image_out != nullptr, "null pointer");
    const qwp::rmat img = image_from(degraded, n);

    qwp::DegradationModel model;
    if (kernel != nullptr) {
      check(kh >= 1 && kw >= 1, "kernel dimensions must be positive");
      model.kernel.taps = qwp::rmat(kh, kw);
      std::memcpy(model.kernel.taps.data(), kernel, sizeof(double) * kh * kw);
    } else {
      model.kernel = qwp::identity_kernel();
    }
    if (mask != nullptr) {
      model.mask = qwp::Mask(n, n);
      std::memcpy(model.mask.data(), mask, n * n);
    } else {
      model.mask = qwp::full_mask(n);
    }

    qwp::SbiParams sp;
    sp.wp = make_params(params->order, params->levels);
    sp.lambda = params->lambda;
    sp.mu = params->mu;
    sp.outer_iters = params->outer_iters;
    sp.cg_iters = params->cg_iters;
    sp.cg_tol = params->cg_tol > 0.0 ? params->cg_tol : 1e-6;
    sp.extend = params->extend != 0;

    qwp::rmat ref_img;
    const qwp::rmat* ref = nullptr;
    if (reference != nullptr) {
      ref_img = image_from(reference, n);
      ref = &ref_img;
    }

    const qwp::SbiResult res = qwp::sbi_restore(img, model, sp, ref);
    std::memcpy(image_out, res.image.data(), sizeof(double) * n * n);
    if (trace != nullptr) {
      for (std::size_t i = 0; i < res.trace.size(); ++i) {
        trace[3 * i + 0] = res.trace[i].objective;
        trace[3 * i + 1] = res.trace[i].cg_rel_residual;
        trace[3 * i + 2] = res.trace[i].psnr_vs_ref;
      }
    }
  });
}

qwp_status qwp_convolve(const double* image, uint64_t n, const double* kernel, int kh, int kw,
                        int adjoint, double* out) {
  return guarded([&] {
    check(kernel != nullptr && out != nullptr, "null pointer");
    check(kh >= 1 && kw >= 1, "kernel dimensions must be positive");
    const qwp::rmat img = image_from(image, n);
    qwp::Kernel k;
    k.taps = qwp::rmat(kh, kw);
    std::memcpy(k.taps.data(), kernel, sizeof(double) * kh * kw);
    const qwp::rmat res = adjoint != 0 ? qwp::convolve_periodic_adjoint(img, k)
                                       : qwp::convolve_periodic(img, k);
    std::memcpy(out, res.data(), sizeof(double) * n * n);
  });
}

}  // extern "C"
