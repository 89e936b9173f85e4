from .writer import write_run, write_eigenvalues, write_table, write_report, read_report, report_to_dict, \
                    print_eigenvalues, print_report, print_expansion

__all__ = ["write_run", "write_eigenvalues", "write_table", "write_report", "read_report", "report_to_dict",
           "print_eigenvalues", "print_report", "print_expansion"]
