#pragma once

#include <string>
#include <string_view>

namespace slowfast {

/// Which branch of the critical curve a quantity lives on.
enum class Branch { Attracting, Repelling };

/// Direction of the slow dynamics across the contact point.
enum class SlowFlow { RepellingToAttracting, AttractingToRepelling };

/// Which argument of the entry-exit relation carries the unknown height.
///  - EntrySolved: the sequence satisfies I(y_{k+1}, y_k) = 0
///  - ExitSolved:  the sequence satisfies I(y_k, y_{k+1}) = 0
enum class Orientation { EntrySolved, ExitSolved };

std::string_view to_string(Orientation o) noexcept;
std::string_view to_string(SlowFlow f) noexcept;

/// A planar slow-fast system at the singular limit, seen through a section
/// transverse to the fast foliation at a nilpotent contact point. Heights are
/// measured on the section and are strictly positive near the contact point.
///
/// The slow divergence integral I(y, y~) from the alpha-limit of height y to
/// the omega-limit of height y~ is split as I(y, y~) = V(y) + W(y~), where
/// W (resp. V) is the part along the attracting (resp. repelling) branch
/// between the contact point and the limit point. Implementations expose
///  - symmetric_sdi(h)              = I(h, h), evaluated without cancelling V
///                                    against W;
///  - branch_sdi(b, upper, drop)    = W(upper) - W(upper - drop) for the
///                                    attracting branch, and the same with V
///                                    for the repelling one.
/// The drop is passed separately from the upper height so that gaps far below
/// the resolution of `upper` keep full relative precision.
///
/// Models are immutable; every member function is a pure function.
class SlowFastModel {
public:
    virtual ~SlowFastModel() = default;

    virtual std::string describe() const = 0;
    virtual int contact_order() const = 0;

    /// Admissible section heights are (0, max_height()], or (0, max_height())
    /// when max_height_is_open().
    virtual double max_height() const = 0;
    virtual bool max_height_is_open() const { return false; }
    bool admissible(double h) const;
    /// Throws NonAdmissibleHeight unless admissible(h).
    void require_admissible(double h) const;

    /// x-coordinate of the omega-limit (attracting branch) of the fast orbit
    /// through the section point at height h.
    virtual double omega_limit(double h) const = 0;
    /// x-coordinate of the alpha-limit (repelling branch).
    virtual double alpha_limit(double h) const = 0;

    virtual double symmetric_sdi(double h) const = 0;
    virtual double branch_sdi(Branch branch, double upper, double drop) const = 0;

    virtual SlowFlow slow_flow() const = 0;

    /// x-coordinate of the contact point and the critical curve as a height
    /// over the contact level; used for plotting only.
    virtual double contact_x() const { return 0.0; }
    virtual double critical_height(double x) const = 0;
};

/// Slow divergence integral from alpha_limit(h_entry) to omega_limit(h_exit).
double sdi(const SlowFastModel& model, double h_entry, double h_exit);

/// Residual of the entry-exit relation for the pair (upper, upper - gap) in
/// the given orientation:
///   EntrySolved: I(upper - gap, upper) = I(upper) - (V(upper) - V(upper - gap))
///   ExitSolved:  I(upper, upper - gap) = I(upper) - (W(upper) - W(upper - gap))
/// `symmetric` must be model.symmetric_sdi(upper); it is passed in so that
/// root solves evaluate it once.
double pair_residual(const SlowFastModel& model, Orientation orientation, double upper,
                     double gap, double symmetric);
double pair_residual(const SlowFastModel& model, Orientation orientation, double upper,
                     double gap);

/// Picks the entry-exit orientation from the sign of I(h_probe) and the slow
/// flow direction. Throws DegenerateModel when I(h_probe) vanishes.
Orientation orientation(const SlowFastModel& model, double h_probe);

// ---------------------------------------------------------------------------

/// x' = y - x^n,  y' = eps (beta x^m + alpha x^(m+2j+1)).
class NormalFormModel final : public SlowFastModel {
public:
    NormalFormModel(int n, int m, int j, double alpha, double beta);

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    int j() const noexcept { return j_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    std::string describe() const override;
    int contact_order() const override { return n_; }
    double max_height() const override { return max_height_; }

    double omega_limit(double h) const override;
    double alpha_limit(double h) const override;
    double symmetric_sdi(double h) const override;
    double branch_sdi(Branch branch, double upper, double drop) const override;
    SlowFlow slow_flow() const override;
    double critical_height(double x) const override;

    /// Integrand of I in the x variable, n^2 x^(2n-2) / g(x); I(y, y~) is
    /// minus its integral from -y^(1/n) to y~^(1/n).
    double divergence_density(double x) const;

private:
    int n_, m_, j_;
    double alpha_, beta_;
    double max_height_;
};

/// x' = y - (x^2 + a x^(2j+3)),  y' = -eps x.
class ClassicalLienardModel final : public SlowFastModel {
public:
    ClassicalLienardModel(int j, double a_coeff);

    /// Test hook: skips the a_coeff != 0 check so that the degenerate
    /// symmetric case F(x) = x^2 can be exercised.
    static ClassicalLienardModel unchecked_for_testing(int j, double a_coeff);

    int j() const noexcept { return j_; }
    double a_coeff() const noexcept { return a_; }

    /// F(x) = x^2 + a x^(2j+3) and its derivative.
    double F(double x) const;
    double dF(double x) const;
    /// Nonzero critical point of F (the fold bounding the admissible range).
    double fold_x() const noexcept { return fold_x_; }

    std::string describe() const override;
    int contact_order() const override { return 2; }
    double max_height() const override { return max_height_; }
    bool max_height_is_open() const override { return true; }

    double omega_limit(double h) const override;
    double alpha_limit(double h) const override;
    double symmetric_sdi(double h) const override;
    double branch_sdi(Branch branch, double upper, double drop) const override;
    SlowFlow slow_flow() const override { return SlowFlow::AttractingToRepelling; }
    double critical_height(double x) const override { return F(x); }

private:
    struct Unchecked {};
    ClassicalLienardModel(int j, double a_coeff, Unchecked);

    double solve_branch(double h, bool positive_side) const;
    double antiderivative(double x) const;

    int j_;
    double a_;
    double fold_x_;
    double max_height_;
};

/// x' = y (delta - y),  y' = (-x + alpha y)(delta - y) - eps (beta - gamma x)
/// with beta = alpha gamma delta. Heights are y - delta on the section
/// {x = alpha delta}.
class TwoStrokeModel final : public SlowFastModel {
public:
    TwoStrokeModel(double alpha, double delta, double gamma);

    double alpha() const noexcept { return alpha_; }
    double delta() const noexcept { return delta_; }
    double gamma() const noexcept { return gamma_; }
    double beta() const noexcept { return alpha_ * gamma_ * delta_; }

    std::string describe() const override;
    int contact_order() const override { return 2; }
    /// 0.2 delta, lowered for alpha >= 2 to the height above which the
    /// forward reduced orbit escapes along the slow eigendirection of the
    /// node and never returns to the critical line (an open bound).
    double max_height() const override { return max_height_; }
    bool max_height_is_open() const override { return max_height_open_; }

    double omega_limit(double h) const override;
    double alpha_limit(double h) const override;
    double symmetric_sdi(double h) const override;
    double branch_sdi(Branch branch, double upper, double drop) const override;
    SlowFlow slow_flow() const override { return SlowFlow::AttractingToRepelling; }
    double contact_x() const override { return alpha_ * delta_; }
    double critical_height(double) const override { return 0.0; }

    /// Offset (x - alpha delta) of the point where the reduced orbit through
    /// (alpha delta, delta + h) meets {y = delta}; forward reduced time gives
    /// the alpha-limit, backward the omega-limit.
    double crossing_offset(double h, bool forward) const;

private:
    double alpha_, delta_, gamma_;
    double max_height_;
    bool max_height_open_ = false;
};

}  // namespace slowfast
