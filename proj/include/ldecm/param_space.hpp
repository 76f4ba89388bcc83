#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ldecm/ecm.hpp"
#include "ldecm/types.hpp"

namespace ldecm {

/// Ascending grids for the three operating-point dimensions.
struct LutAxes {
    std::vector<double> soc;      ///< percent
    std::vector<double> temp;     ///< celsius
    std::vector<double> current;  ///< amperes, discharge-negative, ascending

    [[nodiscard]] std::size_t grid_size() const {
        return soc.size() * temp.size() * current.size();
    }
};

/// Full-resolution characterization grid: SOC 0..100 step 5, T 10..65 step 5,
/// current -{0.1,0.5,1..8}*Q.
LutAxes default_axes(double capacity_ah);

/// Per-parameter box bounds; the tau windows enforce RC time scale separation.
struct ParamBounds {
    std::array<double, ParamSet::kCount> lower{1e-5, 1e-5, 1e-5, 1.5, 30.0, 0.0, 0.0, 0.0};
    std::array<double, ParamSet::kCount> upper{0.05, 0.05, 0.05, 10.0, 150.0, 0.05, 0.5, 0.5};
};

/// Uniform aging knobs: a multiplicative resistance-family scale and an eta_th
/// reduction, both applied after interpolation.
struct AgingAdjust {
    double resistance_scale = 1.0;  ///< applied to r0, r1, r2, theta_r, theta_eta
    double eta_th_shift_v = 0.0;    ///< subtracted from eta_th (floored at 0)
};

ParamSet apply_aging(ParamSet p, const AgingAdjust& aging);

/// Eight corner indices/weights of one trilinear evaluation; shared by all
/// parameter tables since they live on the same axes.
struct TrilinearStencil {
    std::array<std::size_t, 8> index{};
    std::array<double, 8> weight{};
};

/// LUT parameter representation: one 3-D table per parameter, storage order
/// [soc][temp][current], trilinear interpolation, clamped outside the hull.
class ParamLut final : public ParamSource {
public:
    ParamLut() = default;
    ParamLut(LutAxes axes, ParamBounds bounds);

    [[nodiscard]] ParamSet at(double soc_pct, double temp_c, double current_a) const override;

    [[nodiscard]] TrilinearStencil stencil(double soc_pct, double temp_c,
                                           double current_a) const;
    [[nodiscard]] ParamSet gather(const TrilinearStencil& s) const;

    [[nodiscard]] std::size_t flat_index(std::size_t i_soc, std::size_t j_temp,
                                         std::size_t k_current) const {
        return (i_soc * axes_.temp.size() + j_temp) * axes_.current.size() + k_current;
    }

    [[nodiscard]] const LutAxes& axes() const { return axes_; }
    [[nodiscard]] const ParamBounds& bounds() const { return bounds_; }
    [[nodiscard]] const std::vector<double>& table(std::size_t param) const {
        return tables_[param];
    }
    [[nodiscard]] std::vector<double>& table(std::size_t param) { return tables_[param]; }

    /// Fills every entry of parameter `param` with `value`.
    void fill(std::size_t param, double value);

private:
    LutAxes axes_;
    ParamBounds bounds_;
    std::array<std::vector<double>, ParamSet::kCount> tables_;
};

/// Interpolates the LUT and applies the aging adjustment afterwards.
ParamSet eval_lut(const ParamLut& lut, double soc_pct, double temp_c, double current_a,
                  const AgingAdjust& aging);

/// ParamSource adapter layering an aging adjustment over any base source.
class AgedParams final : public ParamSource {
public:
    AgedParams(const ParamSource& base, AgingAdjust aging) : base_(&base), aging_(aging) {}
    [[nodiscard]] ParamSet at(double soc, double temp, double current) const override {
        return apply_aging(base_->at(soc, temp, current), aging_);
    }

private:
    const ParamSource* base_;
    AgingAdjust aging_;
};

/// Sum-of-squares functional representation. Each parameter is
/// lower_bound + ||L^T z||^2 on inputs normalized to the unit cube, which is
/// nonnegative by construction; the optional rational form divides by
/// 1 + ||L_den^T z||^2.
class SosParamFunc final : public ParamSource {
public:
    struct Entry {
        int degree = 1;
        std::vector<double> chol;  ///< lower-triangular, row-major, size m*(m+1)/2
        double lower_bound = 0.0;
        bool rational = false;
        int degree_den = 0;
        std::vector<double> chol_den;
    };

    SosParamFunc() = default;
    SosParamFunc(LutAxes normalization_ranges, std::array<Entry, ParamSet::kCount> entries);

    [[nodiscard]] ParamSet at(double soc_pct, double temp_c, double current_a) const override;

    [[nodiscard]] const LutAxes& ranges() const { return ranges_; }
    [[nodiscard]] const std::array<Entry, ParamSet::kCount>& entries() const { return entries_; }

    /// Monomial count for 3 inputs up to total degree d.
    static std::size_t monomial_count(int degree);
    /// Fills z with all monomials of (x, y, w) up to total degree d,
    /// graded-lexicographic order, constant term first.
    static void monomials(double x, double y, double w, int degree, std::vector<double>& z);

private:
    LutAxes ranges_;
    std::array<Entry, ParamSet::kCount> entries_;
};

/// Linear penalty with a sharp sigmoid switch at 1: values normalized by their
/// upper bound cost ~0 below the bound and ~value above it.
double soft_constraint_penalty(std::span<const double> normalized_values);

/// Squared 2-norms of first/second difference stencils over one parameter table.
struct DifferenceNorms {
    double d1_soc = 0.0;
    double d1_temp = 0.0;
    double d2_soc = 0.0;
    double d2_temp = 0.0;
    double d1_current = 0.0;
};

std::array<DifferenceNorms, ParamSet::kCount> lut_difference_norms(const ParamLut& lut);

/// JSON (de)serialization. Axis order is pinned to [soc, temp, current];
/// files with any other order raise AxisMismatch, unknown versions raise
/// VersionMismatch.
void save_param_lut(const ParamLut& lut, const std::filesystem::path& path);
ParamLut load_param_lut(const std::filesystem::path& path);
void save_sos_params(const SosParamFunc& func, const std::filesystem::path& path);
SosParamFunc load_sos_params(const std::filesystem::path& path);

/// Loads either representation based on the file's "kind" field.
struct LoadedParams {
    std::unique_ptr<ParamSource> source;
    ParamLut lut;      ///< populated when kind == "lut"
    bool is_lut = false;
};
LoadedParams load_params_any(const std::filesystem::path& path);

}  // namespace ldecm
