#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace uct_lambda {

namespace detail {

// One-sided 0.99 quantiles of Student's t for 1..100 degrees of freedom.
inline constexpr std::array<double, 100> kStudentT99 = {
    31.8205159538, 6.9645567343, 4.5407028585, 3.7469473880,
    3.3649299989, 3.1426684033, 2.9979515669, 2.8964594477,
    2.8214379250, 2.7637694581, 2.7180791838, 2.6809979931,
    2.6503088379, 2.6244940676, 2.6024802950, 2.5834871853,
    2.5669339837, 2.5523796302, 2.5394831906, 2.5279770027,
    2.5176480160, 2.5083245529, 2.4998667395, 2.4921594732,
    2.4851071754, 2.4786298236, 2.4726599120, 2.4671400980,
    2.4620213602, 2.4572615424, 2.4528241934, 2.4486776337,
    2.4447941998, 2.4411496279, 2.4377225471, 2.4344940612,
    2.4314474005, 2.4285676309, 2.4258414097, 2.4232567793,
    2.4208029917, 2.4184703596, 2.4162501288, 2.4141343682,
    2.4121158757, 2.4101880962, 2.4083450504, 2.4065812733,
    2.4048917595, 2.4032719167, 2.4017175231, 2.4002246914,
    2.3987898361, 2.3974096448, 2.3960810526, 2.3948012194,
    2.3935675099, 2.3923774754, 2.3912288372, 2.3901194726,
    2.3890474016, 2.3880107748, 2.3870078635, 2.3860370492,
    2.3850968156, 2.3841857404, 2.3833024879, 2.3824458032,
    2.3816145052, 2.3808074823, 2.3800236864, 2.3792621293,
    2.3785218776, 2.3778020499, 2.3771018124, 2.3764203762,
    2.3757569941, 2.3751109582, 2.3744815969, 2.3738682730,
    2.3732703811, 2.3726873461, 2.3721186212, 2.3715636859,
    2.3710220447, 2.3704932255, 2.3699767786, 2.3694722746,
    2.3689793042, 2.3684974762, 2.3680264173, 2.3675657702,
    2.3671151937, 2.3666743611, 2.3662429597, 2.3658206901,
    2.3654072653, 2.3650024105, 2.3646058618, 2.3642173662,
};

// Standard normal 0.99 quantile.
inline constexpr double kNormal99 = 2.3263478740408408;

}  // namespace detail

/// One-sided 99% quantile of Student's t with `dof` degrees of freedom.
/// Table lookup up to 100, Cornish-Fisher expansion around the normal
/// quantile beyond (error below 1e-8 there).
inline double student_t_quantile_99(std::int64_t dof) {
  if (dof < 1) throw std::domain_error("student_t_quantile_99: dof must be >= 1");
  if (dof <= static_cast<std::int64_t>(detail::kStudentT99.size()))
    return detail::kStudentT99[static_cast<std::size_t>(dof - 1)];
  const double z = detail::kNormal99;
  const double z2 = z * z;
  const double v = static_cast<double>(dof);
  const double g1 = z * (z2 + 1.0) / 4.0;
  const double g2 = z * ((5.0 * z2 + 16.0) * z2 + 3.0) / 96.0;
  const double g3 = z * (((3.0 * z2 + 19.0) * z2 + 17.0) * z2 - 15.0) / 384.0;
  const double g4 = z * ((((79.0 * z2 + 776.0) * z2 + 1482.0) * z2 - 1920.0) * z2 - 945.0) / 92160.0;
  return z + g1 / v + g2 / (v * v) + g3 / (v * v * v) + g4 / (v * v * v * v);
}

}  // namespace uct_lambda
