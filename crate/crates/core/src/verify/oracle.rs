/// `(N_p, b_2, eps, H(eps/2), N_p H(eps/2), b_2 ln 2, holds)` with the three
/// reals computed independently at 60 significant digits and rounded to 25.
pub const ENTROPY_ORACLE: [(u64, u64, f64, &str, &str, &str, bool); 12] = [
    (36, 9, 0.01, "0.03147906594716674457108955", "1.133246374098002804559224", "6.238324625039507784755089", true),
    (36, 9, 0.08, "0.1679441477341729569867161", "6.045989318430226451521781", "6.238324625039507784755089", true),
    (36, 9, 0.09, "0.1835211367833752715682624", "6.606760924201509776457446", "6.238324625039507784755089", false),
    (36, 0, 0.1, "0.1985152433458725645991074", "7.146548760451412325567866", "0.0", false),
    (100, 1, 0.001, "0.004300326208932498030155495", "0.4300326208932498030155495", "0.6931471805599453094172321", true),
    (100, 1, 0.002, "0.00790725511223208716247253", "0.790725511223208716247253", "0.6931471805599453094172321", false),
    (324, 36, 0.1, "0.1985152433458725645991074", "64.31893884406271093011079", "24.95329850015803113902036", false),
    (324, 36, 0.2, "0.3250829733914482517035966", "105.3268833788292335519653", "24.95329850015803113902036", false),
    (1296, 81, 0.01, "0.03147906594716674457108955", "40.79686946752810096413206", "56.1449216253555700627958", true),
    (10, 1, 0.2, "0.3250829733914482517035966", "3.250829733914482517035966", "0.6931471805599453094172321", false),
    (144, 16, 0.05, "0.1169068491375310411741545", "16.83458627580446992907824", "11.09035488895912495067571", false),
    (2500, 100, 0.004, "0.01442721486217611494087297", "36.06803715544028735218244", "69.31471805599453094172321", true),
];

/// Whether the leading significant digits of two decimal strings agree.
pub fn same_leading_digits(a: &str, b: &str, digits: usize) -> bool {
    let strip = |s: &str| s.chars().filter(char::is_ascii_digit).collect::<String>().trim_start_matches('0').to_string();
    let (a, b) = (strip(a), strip(b));
    a.chars().take(digits).eq(b.chars().take(digits))
}
