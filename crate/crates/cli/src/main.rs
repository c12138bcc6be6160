use std::process::ExitCode;

fn main() -> ExitCode {
    let env_caps = std::env::var(lpa_cli::CAPS_ENV).ok();
    let (text, code) = lpa_cli::execute(std::env::args_os(), env_caps.as_deref());
    print!("{text}");
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
